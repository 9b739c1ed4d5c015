//! The measure lattice: tuples with zeros on even positions and capped
//! counters on odd positions, plus a top element.
//!
//! Position `i` of a tuple records how often priority `i` can be forced
//! before something more significant is seen. Comparisons are
//! lexicographic with position 0 most significant.

mod map;

pub use map::MeasureMap;
pub(crate) use map::LiftScratch;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::game::{ParityGame, Priority};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeasureError {
    #[error("operation is undefined on top")]
    Top,
    #[error("position {0} is even; only odd positions carry counters")]
    EvenPosition(usize),
    #[error("position {position} is outside tuples of length {len}")]
    OutOfRange { position: usize, len: usize },
}

/// An element of the measure domain, or of its uncapped extension used for
/// play values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Finite(Vec<u32>),
    Top,
}

impl Measure {
    pub fn zero(len: usize) -> Measure {
        Measure::Finite(vec![0; len])
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Measure::Top)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Measure::Finite(t) => t.iter().all(|&x| x == 0),
            Measure::Top => false,
        }
    }

    pub fn as_slice(&self) -> Option<&[u32]> {
        match self {
            Measure::Finite(t) => Some(t),
            Measure::Top => None,
        }
    }

    /// Entry at `i`, treating positions past the end as zero.
    pub fn at(&self, i: usize) -> Option<u32> {
        self.as_slice().map(|t| t.get(i).copied().unwrap_or(0))
    }
}

impl Ord for Measure {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_opt(self.as_slice(), other.as_slice(), usize::MAX).then_with(|| {
            match (self, other) {
                (Measure::Finite(a), Measure::Finite(b)) => a.len().cmp(&b.len()),
                _ => Ordering::Equal,
            }
        })
    }
}

impl PartialOrd for Measure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Top => write!(f, "top"),
            Measure::Finite(t) => {
                write!(f, "(")?;
                for (i, x) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Compares `a` and `b` on positions `0..=i` only. Shorter tuples are
/// padded with zeros; every finite tuple is below top and top equals top.
pub fn cmp_upto(a: &Measure, b: &Measure, i: usize) -> Ordering {
    cmp_opt(a.as_slice(), b.as_slice(), i)
}

pub(crate) fn cmp_opt(a: Option<&[u32]>, b: Option<&[u32]>, upto: usize) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Greater,
        (Some(_), None) => Ordering::Less,
        (Some(a), Some(b)) => {
            let len = a.len().max(b.len()).min(upto.saturating_add(1));
            for k in 0..len {
                let x = a.get(k).copied().unwrap_or(0);
                let y = b.get(k).copied().unwrap_or(0);
                match x.cmp(&y) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
            Ordering::Equal
        }
    }
}

/// The capped measure domain of one game: tuple length and, per odd
/// position, the number of vertices carrying that priority.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureDomain {
    caps: Vec<u32>,
}

impl MeasureDomain {
    pub fn for_game(game: &ParityGame) -> Self {
        let mut caps = vec![0u32; game.tuple_len()];
        for v in game.vertices() {
            let p = game.priority(v) as usize;
            if p % 2 == 1 {
                caps[p] += 1;
            }
        }
        MeasureDomain { caps }
    }

    /// Builds a domain from explicit caps; even positions are forced to 0.
    pub fn from_caps(mut caps: Vec<u32>) -> Self {
        assert!(!caps.is_empty(), "measure tuples have at least one position");
        for (i, c) in caps.iter_mut().enumerate() {
            if i % 2 == 0 {
                *c = 0;
            }
        }
        MeasureDomain { caps }
    }

    pub fn tuple_len(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn cap(&self, i: usize) -> u32 {
        self.caps[i]
    }

    pub fn zero(&self) -> Measure {
        Measure::zero(self.tuple_len())
    }

    /// The all-saturated tuple, the largest finite element.
    pub fn max_finite(&self) -> Measure {
        Measure::Finite(self.caps.clone())
    }

    /// Number of elements including top: `1 + prod(cap_i + 1)` over odd `i`.
    /// Saturates at `u128::MAX`.
    pub fn size(&self) -> u128 {
        self.caps
            .iter()
            .skip(1)
            .step_by(2)
            .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128 + 1))
            .and_then(|finite| finite.checked_add(1))
            .unwrap_or(u128::MAX)
    }

    pub fn contains(&self, m: &Measure) -> bool {
        match m {
            Measure::Top => true,
            Measure::Finite(t) => {
                t.len() == self.tuple_len()
                    && t.iter().zip(&self.caps).all(|(&x, &cap)| x <= cap)
            }
        }
    }

    /// Least element `m` with `m >=_p succ` for even `p`, or with
    /// `m >_p succ` (or `m = succ = top`) for odd `p`.
    pub fn prog(&self, priority: Priority, succ: &Measure) -> Measure {
        let mut out = vec![0; self.tuple_len()];
        if prog_into(&self.caps, priority as usize, succ.as_slice(), &mut out) {
            Measure::Finite(out)
        } else {
            Measure::Top
        }
    }

    /// Least element strictly above `m` up to odd position `k`.
    pub fn succ_upto(&self, m: &Measure, k: usize) -> Result<Measure, MeasureError> {
        if m.is_top() {
            return Err(MeasureError::Top);
        }
        self.check_odd(k)?;
        Ok(self.prog(k as Priority, m))
    }

    /// Whether odd position `i` of `m` holds its cap.
    pub fn is_saturated(&self, m: &Measure, i: usize) -> Result<bool, MeasureError> {
        let t = m.as_slice().ok_or(MeasureError::Top)?;
        self.check_odd(i)?;
        Ok(t.get(i).copied().unwrap_or(0) == self.caps[i])
    }

    fn check_odd(&self, i: usize) -> Result<(), MeasureError> {
        if i >= self.tuple_len() {
            return Err(MeasureError::OutOfRange {
                position: i,
                len: self.tuple_len(),
            });
        }
        if i % 2 == 0 {
            return Err(MeasureError::EvenPosition(i));
        }
        Ok(())
    }
}

/// Writes `prog` of a successor value into `out`. Returns false for top.
///
/// The prefix through position `p` is copied; for odd `p` it is then
/// incremented as a mixed-radix number over the odd positions, carrying
/// towards position 1.
pub(crate) fn prog_into(caps: &[u32], p: usize, src: Option<&[u32]>, out: &mut [u32]) -> bool {
    let Some(src) = src else {
        return false;
    };
    let d = out.len();
    let last = p.min(d - 1);
    out.fill(0);
    for i in (1..=last).step_by(2) {
        out[i] = src.get(i).copied().unwrap_or(0);
    }
    if p % 2 == 0 {
        return true;
    }
    if last == 0 {
        return false;
    }
    let mut i = last - (last + 1) % 2;
    loop {
        if out[i] < caps[i] {
            out[i] += 1;
            out[i + 1..=last].fill(0);
            return true;
        }
        if i == 1 {
            return false;
        }
        i -= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(t: &[u32]) -> Measure {
        Measure::Finite(t.to_vec())
    }

    fn example_domain() -> MeasureDomain {
        MeasureDomain::from_caps(vec![0, 1, 0, 2])
    }

    #[test]
    fn compare_up_to_position() {
        assert_eq!(cmp_upto(&m(&[0, 1, 0, 0]), &m(&[0, 1, 0, 2]), 1), Ordering::Equal);
        assert_eq!(cmp_upto(&m(&[0, 0, 0, 2]), &m(&[0, 1, 0, 0]), 3), Ordering::Less);
        assert_eq!(cmp_upto(&m(&[0, 1, 0, 1]), &Measure::Top, 3), Ordering::Less);
        assert_eq!(cmp_upto(&Measure::Top, &Measure::Top, 0), Ordering::Equal);
        assert_eq!(cmp_upto(&m(&[0, 1]), &m(&[0, 1, 0, 0]), 3), Ordering::Equal);
    }

    #[test]
    fn prog_examples() {
        let dom = example_domain();
        assert_eq!(dom.prog(0, &m(&[0, 1, 0, 2])), m(&[0, 0, 0, 0]));
        assert_eq!(dom.prog(3, &m(&[0, 0, 0, 2])), m(&[0, 1, 0, 0]));
        assert_eq!(dom.prog(1, &m(&[0, 1, 0, 0])), Measure::Top);
        assert_eq!(dom.prog(3, &Measure::Top), Measure::Top);
        assert_eq!(dom.prog(2, &m(&[0, 1, 0, 2])), m(&[0, 1, 0, 0]));
    }

    #[test]
    fn successor_up_to() {
        let dom = example_domain();
        assert_eq!(dom.succ_upto(&m(&[0, 0, 0, 1]), 3), Ok(m(&[0, 0, 0, 2])));
        assert_eq!(dom.succ_upto(&m(&[0, 1, 0, 2]), 3), Ok(Measure::Top));
        assert_eq!(dom.succ_upto(&m(&[0, 0, 0, 0]), 1), Ok(m(&[0, 1, 0, 0])));
        assert_eq!(dom.succ_upto(&Measure::Top, 1), Err(MeasureError::Top));
        assert_eq!(dom.succ_upto(&m(&[0, 0, 0, 0]), 2), Err(MeasureError::EvenPosition(2)));
    }

    #[test]
    fn saturation() {
        let dom = example_domain();
        assert_eq!(dom.is_saturated(&m(&[0, 1, 0, 0]), 1), Ok(true));
        assert_eq!(dom.is_saturated(&m(&[0, 0, 0, 0]), 3), Ok(false));
        assert_eq!(dom.is_saturated(&m(&[0, 1, 0, 2]), 3), Ok(true));
        assert_eq!(dom.is_saturated(&Measure::Top, 1), Err(MeasureError::Top));
    }

    #[test]
    fn domain_size_and_membership() {
        let dom = example_domain();
        assert_eq!(dom.size(), 1 + 2 * 3);
        assert!(dom.contains(&m(&[0, 1, 0, 2])));
        assert!(!dom.contains(&m(&[0, 2, 0, 0])));
        assert!(!dom.contains(&m(&[1, 0, 0, 0])));
        assert_eq!(MeasureDomain::from_caps(vec![3]).caps(), &[0]);
    }

    #[test]
    fn total_order_puts_top_last() {
        let mut values = vec![Measure::Top, m(&[0, 1, 0, 0]), m(&[0, 0, 0, 2]), m(&[0, 0, 0, 0])];
        values.sort();
        assert_eq!(
            values,
            vec![m(&[0, 0, 0, 0]), m(&[0, 0, 0, 2]), m(&[0, 1, 0, 0]), Measure::Top]
        );
        assert_eq!(m(&[0, 1, 0, 0]).to_string(), "(0,1,0,0)");
    }
}
