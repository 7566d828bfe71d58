//! Realized-function closure on finite carriers.
//!
//! The function table a sequence realizes depends only on the table of its
//! prefix and the appended step, so breadth-first composition over
//! deduplicated tables visits each realizable table once per level instead of
//! walking the whole expanded space. Cost per level is
//! `O(realized · m · pairs)`. The BFS reaches a fixpoint when a level adds no
//! table; nothing deeper can appear after that, because new tables only ever
//! extend tables discovered on the previous level.

use std::collections::HashMap;

use crate::error::FaError;
use crate::eval::eval_primitive;
use crate::carrier::{Carrier, Value};
use crate::sequence::BoundSequence;
use crate::space::SearchSpace;

/// Output per carrier point; `None` marks points where the sequence is
/// undefined. Tables with any `None` are partial.
pub type FunctionTable = Vec<Option<u64>>;

pub fn is_total(table: &FunctionTable) -> bool {
    table.iter().all(|v| v.is_some())
}

#[derive(Debug, Clone)]
pub struct ClosureResult {
    /// Realized tables in discovery order (by level, then step order).
    pub tables: Vec<FunctionTable>,
    /// First sequence realizing each table, parallel to `tables`.
    pub witnesses: Vec<BoundSequence>,
    /// Tables known after levels 1, 2, .. (as far as the BFS ran).
    pub cumulative: Vec<usize>,
    /// Deepest level that added a table, set once the BFS exhausted itself.
    pub fixpoint_depth: Option<usize>,
}

impl ClosureResult {
    pub fn contains(&self, table: &FunctionTable) -> bool {
        self.tables.iter().any(|t| t == table)
    }

    pub fn total_tables(&self) -> impl Iterator<Item = &FunctionTable> {
        self.tables.iter().filter(|t| is_total(t))
    }
}

/// The table of one `(primitive, parameter)` step.
fn pair_table(space: &SearchSpace, m: u64, prim: usize, param: usize) -> FunctionTable {
    (0..m)
        .map(|x| {
            match eval_primitive(space.carrier(), space.primitive(prim), param, &Value::Finite(x))
                .expect("catalog pairs evaluate without configuration errors")
            {
                Value::Finite(v) => Some(v),
                Value::Undefined => None,
                Value::Real(_) => unreachable!("finite carrier"),
            }
        })
        .collect()
}

/// The table a whole sequence realizes.
pub fn sequence_table(space: &SearchSpace, seq: &BoundSequence) -> Result<FunctionTable, FaError> {
    seq.validate(space)?;
    let Carrier::Finite { m } = space.carrier() else {
        return Err(FaError::UnsupportedOnReal("function tables"));
    };
    Ok((0..*m)
        .map(|x| {
            match crate::eval::eval_sequence_unchecked(space, seq, &Value::Finite(x)) {
                Value::Finite(v) => Some(v),
                Value::Undefined => None,
                Value::Real(_) => unreachable!("finite carrier"),
            }
        })
        .collect())
}

/// All distinct tables realized by sequences of length <= `max_len`. Stops
/// early if the fixpoint arrives first.
pub fn closure(space: &SearchSpace, max_len: usize) -> Result<ClosureResult, FaError> {
    run_closure(space, Some(max_len), u128::MAX)
}

/// Run to exhaustion and report the fixpoint depth: the smallest length bound
/// that already realizes every reachable table.
pub fn closure_fixpoint(space: &SearchSpace) -> Result<ClosureResult, FaError> {
    run_closure(space, None, u128::MAX)
}

/// Like [`closure`], but refuses once the realized-table set itself outgrows
/// the ceiling.
pub fn closure_capped(
    space: &SearchSpace,
    max_len: usize,
    ceiling: u128,
) -> Result<ClosureResult, FaError> {
    run_closure(space, Some(max_len), ceiling)
}

fn run_closure(
    space: &SearchSpace,
    max_len: Option<usize>,
    ceiling: u128,
) -> Result<ClosureResult, FaError> {
    let Carrier::Finite { m } = *space.carrier() else {
        return Err(FaError::UnsupportedOnReal("closure"));
    };
    if max_len == Some(0) {
        return Err(FaError::config("n", "length bound must be >= 1"));
    }

    let pairs = space.pairs();
    let step_tables: Vec<FunctionTable> = pairs
        .iter()
        .map(|(p, a)| pair_table(space, m, *p, *a))
        .collect();

    let mut seen: HashMap<FunctionTable, usize> = HashMap::new();
    let mut tables: Vec<FunctionTable> = Vec::new();
    let mut witnesses: Vec<BoundSequence> = Vec::new();
    let mut cumulative: Vec<usize> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    let mut fixpoint_depth = None;

    let mut level = 0usize;
    loop {
        level += 1;
        let mut next_frontier = Vec::new();
        if level == 1 {
            for (pair_index, table) in step_tables.iter().enumerate() {
                if !seen.contains_key(table) {
                    seen.insert(table.clone(), tables.len());
                    next_frontier.push(tables.len());
                    tables.push(table.clone());
                    witnesses.push(BoundSequence::new(vec![pairs[pair_index]]));
                }
            }
        } else {
            for &idx in &frontier {
                let base = tables[idx].clone();
                let base_witness = witnesses[idx].clone();
                for (pair_index, step) in step_tables.iter().enumerate() {
                    let composed: FunctionTable = base
                        .iter()
                        .map(|v| v.and_then(|x| step[x as usize]))
                        .collect();
                    if !seen.contains_key(&composed) {
                        seen.insert(composed.clone(), tables.len());
                        next_frontier.push(tables.len());
                        tables.push(composed);
                        let mut steps = base_witness.steps.clone();
                        steps.push(pairs[pair_index]);
                        witnesses.push(BoundSequence::new(steps));
                    }
                }
            }
        }

        if next_frontier.is_empty() {
            fixpoint_depth = Some(level - 1);
            break;
        }
        if tables.len() as u128 > ceiling {
            return Err(FaError::BudgetExceeded {
                count: tables.len() as u128,
                ceiling,
            });
        }
        cumulative.push(tables.len());
        frontier = next_frontier;
        if max_len == Some(level) {
            break;
        }
    }

    Ok(ClosureResult {
        tables,
        witnesses,
        cumulative,
        fixpoint_depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::elementary_catalog;
    use crate::primitive::Primitive;

    fn z3_space(tables: &[(&str, [u64; 3])]) -> SearchSpace {
        SearchSpace::new(
            Carrier::finite(3).unwrap(),
            tables
                .iter()
                .map(|(id, t)| Primitive::table(id, t.to_vec()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn powers_of_a_three_cycle() {
        let space = z3_space(&[("inc", [1, 2, 0])]);
        let result = closure(&space, 3).unwrap();
        let mut tables = result.tables.clone();
        tables.sort();
        assert_eq!(
            tables,
            vec![
                vec![Some(0), Some(1), Some(2)],
                vec![Some(1), Some(2), Some(0)],
                vec![Some(2), Some(0), Some(1)],
            ]
        );
        // the bound stops the search before the fixpoint is observable
        assert_eq!(result.fixpoint_depth, None);
        assert_eq!(closure_fixpoint(&space).unwrap().fixpoint_depth, Some(3));
    }

    #[test]
    fn involution_closes_at_two() {
        let space = SearchSpace::new(
            Carrier::finite(2).unwrap(),
            vec![Primitive::table("not", vec![1, 0])],
        )
        .unwrap();
        let result = closure(&space, 2).unwrap();
        assert_eq!(result.tables.len(), 2);
        assert_eq!(closure_fixpoint(&space).unwrap().fixpoint_depth, Some(2));
    }

    #[test]
    fn closure_is_monotone_in_length() {
        let space = elementary_catalog("t3-generators").unwrap();
        let shallow = closure(&space, 2).unwrap();
        let deep = closure(&space, 3).unwrap();
        for t in &shallow.tables {
            assert!(deep.contains(t));
        }
        assert!(shallow.tables.len() <= deep.tables.len());
    }

    #[test]
    fn witnesses_realize_their_tables() {
        let space = elementary_catalog("t3-generators").unwrap();
        let result = closure(&space, 3).unwrap();
        for (table, witness) in result.tables.iter().zip(&result.witnesses) {
            assert_eq!(sequence_table(&space, witness).unwrap(), *table);
        }
    }

    #[test]
    fn real_carriers_are_rejected() {
        let space = elementary_catalog("real-basic").unwrap();
        assert!(matches!(
            closure(&space, 2),
            Err(FaError::UnsupportedOnReal(_))
        ));
    }
}
