//! Brute-force VC dimension of the dichotomies a space realizes.
//!
//! Every function table realized by sequences of length <= n is restricted to
//! the chosen domain points, giving a set of 0/1 dichotomies. The dimension is
//! the largest d such that some d-subset of the points carries all 2^d
//! patterns; subsets are tried in ascending d, which is sound because
//! shattering d + 1 points shatters every d-subset of them.

use std::collections::HashMap;

use crate::carrier::Carrier;
use crate::closure::closure;
use crate::error::FaError;
use crate::sequence::BoundSequence;
use crate::space::SearchSpace;

#[derive(Debug, Clone)]
pub struct VcWitness {
    /// The shattered points, as carrier values.
    pub points: Vec<u64>,
    /// One realizing sequence per pattern; bit i of the mask is the output at
    /// `points[i]`. All `2^d` patterns are present.
    pub patterns: Vec<(u64, BoundSequence)>,
}

#[derive(Debug, Clone)]
pub struct VcReport {
    pub dimension: usize,
    /// Distinct dichotomies realized over the full point list.
    pub dichotomy_count: usize,
    /// Shattering witness for `dimension`; absent when the dimension is 0.
    pub witness: Option<VcWitness>,
}

pub fn vc_dimension(
    space: &SearchSpace,
    n: usize,
    domain_points: &[u64],
    max_d: usize,
) -> Result<VcReport, FaError> {
    let Carrier::Finite { m } = *space.carrier() else {
        return Err(FaError::UnsupportedOnReal("VC dimension"));
    };
    if domain_points.is_empty() || domain_points.len() > 64 {
        return Err(FaError::config(
            "domain_points",
            "between 1 and 64 domain points are supported",
        ));
    }
    let mut seen = std::collections::HashSet::new();
    for (i, p) in domain_points.iter().enumerate() {
        if *p >= m {
            return Err(FaError::config(
                format!("domain_points[{i}]"),
                format!("point {p} lies outside the carrier Z_{m}"),
            ));
        }
        if !seen.insert(*p) {
            return Err(FaError::config(
                format!("domain_points[{i}]"),
                format!("duplicate point {p}"),
            ));
        }
    }
    if max_d < 1 || max_d > domain_points.len() {
        return Err(FaError::config(
            "max_d",
            "max_d must satisfy 1 <= max_d <= |domain_points|",
        ));
    }

    let realized = closure(space, n)?;

    // distinct dichotomies in discovery order, each with its first realizer
    let mut masks: Vec<u64> = Vec::new();
    let mut realizer_of: HashMap<u64, usize> = HashMap::new();
    for (table_index, (table, witness)) in
        realized.tables.iter().zip(&realized.witnesses).enumerate()
    {
        let mut mask = 0u64;
        for (bit, point) in domain_points.iter().enumerate() {
            match table[*point as usize] {
                Some(0) => {}
                Some(1) => mask |= 1 << bit,
                other => {
                    return Err(FaError::NonBinaryOutput {
                        sequence: witness.render(space),
                        point: match other {
                            Some(v) => format!("{point} (output {v})"),
                            None => format!("{point} (undefined)"),
                        },
                    });
                }
            }
        }
        if let std::collections::hash_map::Entry::Vacant(e) = realizer_of.entry(mask) {
            e.insert(table_index);
            masks.push(mask);
        }
    }

    let mut dimension = 0usize;
    let mut best_witness: Option<VcWitness> = None;

    for d in 1..=max_d {
        let mut shattered: Option<Vec<usize>> = None;
        let mut subset: Vec<usize> = (0..d).collect();
        loop {
            // patterns realized on this subset, first realizer wins
            let mut patterns: HashMap<u64, u64> = HashMap::new();
            for mask in &masks {
                let mut pattern = 0u64;
                for (bit, pos) in subset.iter().enumerate() {
                    if mask & (1 << pos) != 0 {
                        pattern |= 1 << bit;
                    }
                }
                patterns.entry(pattern).or_insert(*mask);
            }
            if patterns.len() == 1 << d {
                shattered = Some(subset.clone());
                break;
            }
            if !next_combination(&mut subset, domain_points.len()) {
                break;
            }
        }
        let Some(subset) = shattered else {
            break;
        };
        dimension = d;
        let mut patterns = Vec::with_capacity(1 << d);
        for pattern in 0..(1u64 << d) {
            // reconstruct the full-mask realizer for this sub-pattern
            let full = masks
                .iter()
                .find(|mask| {
                    subset.iter().enumerate().all(|(bit, pos)| {
                        ((*mask >> pos) & 1) == ((pattern >> bit) & 1)
                    })
                })
                .expect("shattered subset realizes every pattern");
            let table_index = realizer_of[full];
            patterns.push((pattern, realized.witnesses[table_index].clone()));
        }
        best_witness = Some(VcWitness {
            points: subset.iter().map(|i| domain_points[*i]).collect(),
            patterns,
        });
    }

    Ok(VcReport {
        dimension,
        dichotomy_count: masks.len(),
        witness: if dimension == 0 { None } else { best_witness },
    })
}

/// Lexicographic successor of a k-combination of `0..n`; false when exhausted.
fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] < n - (k - i) {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
