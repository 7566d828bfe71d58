//! Search spaces and canonical enumeration of the expanded space.
//!
//! The expanded space of a search space `S` at length bound `n` is every
//! composition sequence of 1..=n primitives from `S`, each step bound to one
//! parameter tuple. Enumeration order is fixed once and shared by every
//! consumer: skeletons stream by ascending length, then lexicographically by
//! primitive index; assignments for a fixed skeleton stream in odometer order
//! with the last step varying fastest. `skeleton_at` gives random access into
//! the skeleton stream, so workers can split the range into disjoint chunks and
//! still agree on ranks.

use crate::carrier::Carrier;
use crate::error::FaError;
use crate::primitive::Primitive;
use crate::sequence::{BoundSequence, SequenceSkeleton};

/// An ordered, immutable set of primitives over one carrier. List order defines
/// the canonical primitive indexing used everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    carrier: Carrier,
    primitives: Vec<Primitive>,
}

impl SearchSpace {
    pub fn new(carrier: Carrier, primitives: Vec<Primitive>) -> Result<Self, FaError> {
        if primitives.is_empty() {
            return Err(FaError::config("primitives", "a space needs at least one primitive"));
        }
        let mut ids = std::collections::HashSet::new();
        for (i, prim) in primitives.iter().enumerate() {
            prim.validate(&carrier, &format!("primitives[{i}]"))?;
            if !ids.insert(prim.id.clone()) {
                return Err(FaError::config(
                    format!("primitives[{i}].id"),
                    format!("duplicate primitive id `{}`", prim.id),
                ));
            }
        }
        Ok(SearchSpace { carrier, primitives })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    pub fn primitive(&self, index: usize) -> &Primitive {
        &self.primitives[index]
    }

    pub fn primitive_count(&self) -> usize {
        self.primitives.len()
    }

    pub fn primitive_index(&self, id: &str) -> Option<usize> {
        self.primitives.iter().position(|p| p.id == id)
    }

    /// Total `(primitive, parameter)` choices for one step.
    pub fn pair_count(&self) -> usize {
        self.primitives.iter().map(|p| p.param_count()).sum()
    }

    /// Decode a flattened pair index (primitive-major, parameter-minor).
    pub fn pair_at(&self, mut flat: usize) -> (usize, usize) {
        for (i, prim) in self.primitives.iter().enumerate() {
            if flat < prim.param_count() {
                return (i, flat);
            }
            flat -= prim.param_count();
        }
        panic!("pair index out of range");
    }

    /// All `(primitive, parameter)` pairs in canonical order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.pair_count());
        for (i, prim) in self.primitives.iter().enumerate() {
            for a in 0..prim.param_count() {
                out.push((i, a));
            }
        }
        out
    }

    /// A copy with one primitive removed; used by ablation sweeps.
    pub fn without_primitive(&self, index: usize) -> Result<SearchSpace, FaError> {
        let mut primitives = self.primitives.clone();
        if index >= primitives.len() {
            return Err(FaError::config("ablation", "primitive index out of range"));
        }
        primitives.remove(index);
        SearchSpace::new(self.carrier, primitives)
    }

    /// A copy with one primitive appended.
    pub fn with_primitive(&self, prim: Primitive) -> Result<SearchSpace, FaError> {
        let mut primitives = self.primitives.clone();
        primitives.push(prim);
        SearchSpace::new(self.carrier, primitives)
    }
}

/// Closed-form sizes of the expanded space. Counting never enumerates;
/// arithmetic is checked and overflow surfaces as its own error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpandedCount {
    pub structures: u128,
    pub bound_sequences: u128,
}

fn geometric_sum(base: u128, n: usize) -> Result<u128, FaError> {
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..n {
        power = power.checked_mul(base).ok_or(FaError::CountOverflow)?;
        total = total.checked_add(power).ok_or(FaError::CountOverflow)?;
    }
    Ok(total)
}

/// Skeleton and bound-sequence counts for lengths 1..=n. Structures total
/// `sum m^k`; bound sequences total `sum P^k` where `P` is the per-step pair
/// count (the product of per-step grids summed over all skeletons collapses to
/// a power of `P`).
pub fn count_expanded(space: &SearchSpace, n: usize) -> Result<ExpandedCount, FaError> {
    if n < 1 {
        return Err(FaError::config("n", "length bound must be >= 1"));
    }
    Ok(ExpandedCount {
        structures: geometric_sum(space.primitive_count() as u128, n)?,
        bound_sequences: geometric_sum(space.pair_count() as u128, n)?,
    })
}

/// Assignments of one skeleton: the product of its per-step grid sizes.
pub fn assignment_count(space: &SearchSpace, skeleton: &SequenceSkeleton) -> Result<u128, FaError> {
    let mut total: u128 = 1;
    for p in &skeleton.steps {
        total = total
            .checked_mul(space.primitive(*p).param_count() as u128)
            .ok_or(FaError::CountOverflow)?;
    }
    Ok(total)
}

/// Random access into the canonical skeleton stream.
pub fn skeleton_at(space: &SearchSpace, n: usize, index: u128) -> Result<SequenceSkeleton, FaError> {
    let m = space.primitive_count() as u128;
    let mut remaining = index;
    let mut count: u128 = 1;
    for k in 1..=n {
        count = count.checked_mul(m).ok_or(FaError::CountOverflow)?;
        if remaining < count {
            // digits of `remaining` in base m, most significant digit first
            let mut steps = vec![0usize; k];
            let mut r = remaining;
            for slot in steps.iter_mut().rev() {
                *slot = (r % m) as usize;
                r /= m;
            }
            return Ok(SequenceSkeleton::new(steps));
        }
        remaining -= count;
    }
    Err(FaError::config("index", "skeleton index out of range"))
}

/// Every skeleton of length 1..=n exactly once, canonical order.
pub fn enumerate_structures<'a>(
    space: &'a SearchSpace,
    n: usize,
) -> impl Iterator<Item = SequenceSkeleton> + 'a {
    StructureIter {
        m: space.primitive_count(),
        n,
        digits: Vec::new(),
        done: n == 0,
    }
}

struct StructureIter {
    m: usize,
    n: usize,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for StructureIter {
    type Item = SequenceSkeleton;

    fn next(&mut self) -> Option<SequenceSkeleton> {
        if self.done {
            return None;
        }
        if self.digits.is_empty() {
            self.digits = vec![0];
            return Some(SequenceSkeleton::new(self.digits.clone()));
        }
        // lexicographic successor: bump the last digit, carry left
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                if self.digits.len() == self.n {
                    self.done = true;
                    return None;
                }
                let len = self.digits.len() + 1;
                self.digits = vec![0; len];
                break;
            }
            i -= 1;
            if self.digits[i] + 1 < self.m {
                self.digits[i] += 1;
                for d in self.digits[i + 1..].iter_mut() {
                    *d = 0;
                }
                break;
            }
        }
        Some(SequenceSkeleton::new(self.digits.clone()))
    }
}

/// Every parameter assignment of a skeleton exactly once, odometer order (last
/// step varies fastest).
pub fn enumerate_assignments<'a>(
    space: &'a SearchSpace,
    skeleton: &SequenceSkeleton,
) -> impl Iterator<Item = BoundSequence> + 'a {
    AssignmentIter {
        steps: skeleton.steps.clone(),
        radices: skeleton
            .steps
            .iter()
            .map(|p| space.primitive(*p).param_count())
            .collect(),
        current: vec![0; skeleton.steps.len()],
        done: skeleton.steps.is_empty(),
        first: true,
    }
}

struct AssignmentIter {
    steps: Vec<usize>,
    radices: Vec<usize>,
    current: Vec<usize>,
    done: bool,
    first: bool,
}

impl Iterator for AssignmentIter {
    type Item = BoundSequence;

    fn next(&mut self) -> Option<BoundSequence> {
        if self.done {
            return None;
        }
        if !self.first {
            let mut i = self.current.len();
            loop {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                if self.current[i] + 1 < self.radices[i] {
                    self.current[i] += 1;
                    for d in self.current[i + 1..].iter_mut() {
                        *d = 0;
                    }
                    break;
                }
            }
        }
        self.first = false;
        Some(BoundSequence::new(
            self.steps
                .iter()
                .zip(self.current.iter())
                .map(|(p, a)| (*p, *a))
                .collect(),
        ))
    }
}

/// Decode a flat index in `[0, sum P^k)` into a bound sequence. This bijection
/// backs seeded uniform sampling; its order interleaves primitive and parameter
/// digits, so it is *not* the canonical stream order.
pub fn flat_sequence_at(space: &SearchSpace, n: usize, index: u128) -> Result<BoundSequence, FaError> {
    let p = space.pair_count() as u128;
    let mut remaining = index;
    let mut count: u128 = 1;
    for k in 1..=n {
        count = count.checked_mul(p).ok_or(FaError::CountOverflow)?;
        if remaining < count {
            let mut steps = vec![(0usize, 0usize); k];
            let mut r = remaining;
            for slot in steps.iter_mut().rev() {
                *slot = space.pair_at((r % p) as usize);
                r /= p;
            }
            return Ok(BoundSequence::new(steps));
        }
        remaining -= count;
    }
    Err(FaError::config("index", "sequence index out of range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitive::ParamTuple;

    fn space_with(m: u64, prims: usize) -> SearchSpace {
        let identity: Vec<u64> = (0..m).collect();
        let primitives = (0..prims)
            .map(|i| Primitive::table(&format!("p{i}"), identity.clone()))
            .collect();
        SearchSpace::new(Carrier::finite(m).unwrap(), primitives).unwrap()
    }

    #[test]
    fn duplicate_ids_rejected() {
        let c = Carrier::finite(3).unwrap();
        let prims = vec![
            Primitive::table("f", vec![0, 1, 2]),
            Primitive::table("f", vec![1, 2, 0]),
        ];
        let err = SearchSpace::new(c, prims).unwrap_err();
        assert!(err.to_string().contains("primitives[1].id"));
    }

    #[test]
    fn structure_counts() {
        let s = space_with(2, 2);
        assert_eq!(count_expanded(&s, 3).unwrap().structures, 14);
        let s = space_with(2, 1);
        assert_eq!(count_expanded(&s, 5).unwrap().structures, 5);
    }

    #[test]
    fn enumeration_matches_counts_and_order() {
        let s = space_with(3, 3);
        let all: Vec<_> = enumerate_structures(&s, 2).collect();
        assert_eq!(all.len(), 12);
        // 3 length-1 skeletons precede the first length-2 one
        assert_eq!(all[3].steps, vec![0, 0]);
        for (i, skel) in all.iter().enumerate() {
            assert_eq!(skeleton_at(&s, 2, i as u128).unwrap(), *skel);
        }
    }

    #[test]
    fn bound_counts_use_pair_sum() {
        // one primitive, three parameter tuples: sum 3^k for k <= 2
        let c = Carrier::finite(2).unwrap();
        let prim = Primitive {
            id: "f".into(),
            rule: crate::primitive::PrimitiveRule::LookupTable(vec![0, 1, 1, 0, 0, 0]),
            params: vec![
                ParamTuple(vec![0.0]),
                ParamTuple(vec![1.0]),
                ParamTuple(vec![2.0]),
            ],
            restriction: Default::default(),
        };
        let s = SearchSpace::new(c, vec![prim]).unwrap();
        let counts = count_expanded(&s, 2).unwrap();
        assert_eq!(counts.structures, 2);
        assert_eq!(counts.bound_sequences, 12);
    }

    #[test]
    fn degenerate_grids_count_like_structures() {
        let s = space_with(2, 2);
        let counts = count_expanded(&s, 3).unwrap();
        assert_eq!(counts.structures, counts.bound_sequences);
        assert_eq!(counts.bound_sequences, 14);
    }

    #[test]
    fn assignment_odometer_order() {
        let c = Carrier::finite(2).unwrap();
        let f = Primitive {
            id: "f".into(),
            rule: crate::primitive::PrimitiveRule::LookupTable(vec![0, 1, 1, 0]),
            params: vec![ParamTuple(vec![0.0]), ParamTuple(vec![1.0])],
            restriction: Default::default(),
        };
        let g = Primitive {
            id: "g".into(),
            rule: crate::primitive::PrimitiveRule::LookupTable(vec![0, 1, 1, 0, 0, 0]),
            params: vec![
                ParamTuple(vec![0.0]),
                ParamTuple(vec![1.0]),
                ParamTuple(vec![2.0]),
            ],
            restriction: Default::default(),
        };
        let s = SearchSpace::new(c, vec![f, g]).unwrap();

        let skel = SequenceSkeleton::new(vec![0, 1]);
        let all: Vec<_> = enumerate_assignments(&s, &skel).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[1].steps, vec![(0, 0), (1, 1)]);
        assert_eq!(assignment_count(&s, &skel).unwrap(), 6);

        let single = SequenceSkeleton::new(vec![0]);
        assert_eq!(enumerate_assignments(&s, &single).count(), 2);
    }

    #[test]
    fn flat_decode_is_a_bijection() {
        let s = space_with(2, 2);
        let total = count_expanded(&s, 3).unwrap().bound_sequences;
        let mut seen = std::collections::HashSet::new();
        for i in 0..total {
            let seq = flat_sequence_at(&s, 3, i).unwrap();
            seq.validate(&s).unwrap();
            assert!(seen.insert(seq));
        }
        assert_eq!(seen.len() as u128, total);
        assert!(flat_sequence_at(&s, 3, total).is_err());
    }
}
