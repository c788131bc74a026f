use rayon::prelude::*;

use super::{RandomStream, RelationKind, RelationSpec};
use crate::error::Result;
use crate::family::QuantileModel;
use crate::orderstats::{check_draws, fill_uniform_order_stat};

/// Replicates per chunk. Chunk `c` draws from substreams `4c..4c+4`, so the
/// output does not depend on how many workers process the chunks.
pub const CHUNK_SIZE: usize = 4096;

/// `count` independent standard exponentials, `−log(1−U)` per draw.
pub fn sample_exponential(count: usize, stream: &mut RandomStream) -> Vec<f64> {
    (0..count).map(|_| stream.next_exponential()).collect()
}

/// The unshifted variables and the standard exponential shifts behind each
/// side of a relation, before they are combined.
#[derive(Debug, Clone, PartialEq)]
pub struct SideParts {
    pub left_base: Vec<f64>,
    pub left_shift: Vec<f64>,
    pub right_base: Vec<f64>,
    pub right_shift: Vec<f64>,
}

impl SideParts {
    /// `left_base + a·ξ₁` and `right_base − b·ξ₂`.
    pub fn combine(&self, rel: &RelationSpec) -> (Vec<f64>, Vec<f64>) {
        let (a, b) = (rel.shifts().a(), rel.shifts().b());
        let left = self
            .left_base
            .iter()
            .zip(&self.left_shift)
            .map(|(x, e)| x + a * e)
            .collect();
        let right = self
            .right_base
            .iter()
            .zip(&self.right_shift)
            .map(|(x, e)| x - b * e)
            .collect();
        (left, right)
    }
}

fn uniforms_per_draw(rel: &RelationSpec) -> u64 {
    match rel.kind() {
        RelationKind::Adjacent { n, .. } | RelationKind::TwoSpacing { n, .. } => 2 * u64::from(n),
        RelationKind::CorollaryMax { n } => 1 + u64::from(n),
        RelationKind::PowerMax { .. } => 3,
    }
}

fn left_probabilities(rel: &RelationSpec, len: usize, stream: &mut RandomStream) -> Vec<f64> {
    match (rel.left_rank(), rel.kind()) {
        (Some(rank), _) => {
            let mut out = Vec::with_capacity(len);
            fill_uniform_order_stat(rank, len, stream, &mut out);
            out
        }
        (None, RelationKind::PowerMax { alpha, .. }) => {
            (0..len).map(|_| stream.next_open01().powf(alpha.recip())).collect()
        }
        _ => unreachable!(),
    }
}

fn right_probabilities(rel: &RelationSpec, len: usize, stream: &mut RandomStream) -> Vec<f64> {
    match (rel.right_rank(), rel.kind()) {
        (Some(rank), _) => {
            let mut out = Vec::with_capacity(len);
            fill_uniform_order_stat(rank, len, stream, &mut out);
            out
        }
        (None, RelationKind::PowerMax { alpha, beta }) => (0..len)
            .map(|_| {
                let y1 = stream.next_open01().powf(alpha.recip());
                let y2 = stream.next_open01().powf(beta.recip());
                y1.max(y2)
            })
            .collect(),
        _ => unreachable!(),
    }
}

/// Simulates the four independent ingredients of a relation's two sides.
///
/// One `u64` is drawn from `stream` to key the per-chunk substreams; the
/// left and right sides, and the shifts on each, never share a substream.
pub fn simulate_side_parts<M: QuantileModel + ?Sized>(
    rel: &RelationSpec,
    model: &M,
    count: usize,
    stream: &mut RandomStream,
) -> Result<SideParts> {
    rel.check_model(model)?;
    check_draws(count, uniforms_per_draw(rel) + 2)?;
    let key = stream.next_u64();
    let chunks: Vec<(usize, usize)> = (0..count)
        .step_by(CHUNK_SIZE)
        .enumerate()
        .map(|(c, start)| (c, CHUNK_SIZE.min(count - start)))
        .collect();

    let parts: Vec<SideParts> = chunks
        .par_iter()
        .map(|&(c, len)| {
            let base = 4 * c as u64;
            let mut lb = left_probabilities(rel, len, &mut RandomStream::new(key, base));
            let ls = sample_exponential(len, &mut RandomStream::new(key, base + 1));
            let mut rb = right_probabilities(rel, len, &mut RandomStream::new(key, base + 2));
            let rs = sample_exponential(len, &mut RandomStream::new(key, base + 3));
            for v in lb.iter_mut().chain(rb.iter_mut()) {
                *v = model.quantile_unchecked(*v);
            }
            SideParts {
                left_base: lb,
                left_shift: ls,
                right_base: rb,
                right_shift: rs,
            }
        })
        .collect();

    let mut out = SideParts {
        left_base: Vec::with_capacity(count),
        left_shift: Vec::with_capacity(count),
        right_base: Vec::with_capacity(count),
        right_shift: Vec::with_capacity(count),
    };
    for p in parts {
        out.left_base.extend(p.left_base);
        out.left_shift.extend(p.left_shift);
        out.right_base.extend(p.right_base);
        out.right_shift.extend(p.right_shift);
    }
    Ok(out)
}

/// Draws of both sides of `rel` with the variables generated from `model`.
pub fn simulate_sides<M: QuantileModel + ?Sized>(
    rel: &RelationSpec,
    model: &M,
    count: usize,
    stream: &mut RandomStream,
) -> Result<(Vec<f64>, Vec<f64>)> {
    Ok(simulate_side_parts(rel, model, count, stream)?.combine(rel))
}
