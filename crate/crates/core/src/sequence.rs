use std::cmp::Ordering;

use crate::error::FaError;
use crate::space::SearchSpace;

/// Ordered primitive choices without parameters; the structural part of a
/// sequence. Steps hold indices into the governing space's primitive list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceSkeleton {
    pub steps: Vec<usize>,
}

impl SequenceSkeleton {
    pub fn new(steps: Vec<usize>) -> Self {
        SequenceSkeleton { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn validate(&self, space: &SearchSpace) -> Result<(), FaError> {
        if self.steps.is_empty() {
            return Err(FaError::config("skeleton", "sequences have length >= 1"));
        }
        for (i, p) in self.steps.iter().enumerate() {
            if *p >= space.primitive_count() {
                return Err(FaError::config(
                    format!("skeleton.steps[{i}]"),
                    format!("primitive index {p} does not resolve in the space"),
                ));
            }
        }
        Ok(())
    }

    /// Parse `id·id·id` (also accepts `,` as separator) against a space.
    pub fn parse(text: &str, space: &SearchSpace) -> Result<Self, FaError> {
        let mut steps = Vec::new();
        for token in split_steps(text) {
            let token = token.trim();
            let index = space.primitive_index(token).ok_or_else(|| {
                FaError::config("skeleton", format!("unknown primitive id `{token}`"))
            })?;
            steps.push(index);
        }
        let skeleton = SequenceSkeleton::new(steps);
        skeleton.validate(space)?;
        Ok(skeleton)
    }

    pub fn render(&self, space: &SearchSpace) -> String {
        self.steps
            .iter()
            .map(|p| space.primitive(*p).id.as_str())
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// A skeleton plus one parameter choice per step: `(primitive index,
/// parameter index)` pairs. Step 0 applies first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundSequence {
    pub steps: Vec<(usize, usize)>,
}

impl BoundSequence {
    pub fn new(steps: Vec<(usize, usize)>) -> Self {
        BoundSequence { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn skeleton(&self) -> SequenceSkeleton {
        SequenceSkeleton::new(self.steps.iter().map(|s| s.0).collect())
    }

    pub fn validate(&self, space: &SearchSpace) -> Result<(), FaError> {
        if self.steps.is_empty() {
            return Err(FaError::config("sequence", "sequences have length >= 1"));
        }
        for (i, (p, a)) in self.steps.iter().enumerate() {
            if *p >= space.primitive_count() {
                return Err(FaError::config(
                    format!("sequence.steps[{i}]"),
                    format!("primitive index {p} does not resolve in the space"),
                ));
            }
            if *a >= space.primitive(*p).param_count() {
                return Err(FaError::config(
                    format!("sequence.steps[{i}]"),
                    format!(
                        "parameter index {a} out of range for `{}` (|params| = {})",
                        space.primitive(*p).id,
                        space.primitive(*p).param_count()
                    ),
                ));
            }
        }
        Ok(())
    }

    /// Canonical ordering shared by every solver tie-break: shorter first, then
    /// the skeleton lexicographically, then the parameter assignment.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.steps
            .len()
            .cmp(&other.steps.len())
            .then_with(|| {
                self.steps
                    .iter()
                    .map(|s| s.0)
                    .cmp(other.steps.iter().map(|s| s.0))
            })
            .then_with(|| {
                self.steps
                    .iter()
                    .map(|s| s.1)
                    .cmp(other.steps.iter().map(|s| s.1))
            })
    }

    /// Render as `id[param]·id[param]`; `parse` reads the same shape back.
    pub fn render(&self, space: &SearchSpace) -> String {
        self.steps
            .iter()
            .map(|(p, a)| format!("{}[{}]", space.primitive(*p).id, a))
            .collect::<Vec<_>>()
            .join("·")
    }

    pub fn parse(text: &str, space: &SearchSpace) -> Result<Self, FaError> {
        let mut steps = Vec::new();
        for token in split_steps(text) {
            let token = token.trim();
            let (id, param) = match token.find('[') {
                Some(open) if token.ends_with(']') => {
                    let id = &token[..open];
                    let inner = &token[open + 1..token.len() - 1];
                    let param: usize = inner.parse().map_err(|_| {
                        FaError::config("sequence", format!("bad parameter index in `{token}`"))
                    })?;
                    (id, param)
                }
                // bare id defaults to parameter 0
                None => (token, 0),
                _ => {
                    return Err(FaError::config(
                        "sequence",
                        format!("malformed step `{token}`, expected id[param]"),
                    ))
                }
            };
            let index = space.primitive_index(id).ok_or_else(|| {
                FaError::config("sequence", format!("unknown primitive id `{id}`"))
            })?;
            steps.push((index, param));
        }
        let seq = BoundSequence::new(steps);
        seq.validate(space)?;
        Ok(seq)
    }

    /// Build from (id, param) pairs.
    pub fn from_ids(steps: &[(&str, usize)], space: &SearchSpace) -> Result<Self, FaError> {
        let mut out = Vec::with_capacity(steps.len());
        for (id, a) in steps {
            let index = space.primitive_index(id).ok_or_else(|| {
                FaError::config("sequence", format!("unknown primitive id `{id}`"))
            })?;
            out.push((index, *a));
        }
        let seq = BoundSequence::new(out);
        seq.validate(space)?;
        Ok(seq)
    }
}

fn split_steps(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c| c == '·' || c == ',').filter(|t| !t.trim().is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::Carrier;
    use crate::primitive::Primitive;

    fn two_prim_space() -> SearchSpace {
        SearchSpace::new(
            Carrier::finite(3).unwrap(),
            vec![
                Primitive::table("inc", vec![1, 2, 0]),
                Primitive::table("swap01", vec![1, 0, 2]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn render_parse_round_trip() {
        let space = two_prim_space();
        let seq = BoundSequence::new(vec![(0, 0), (1, 0), (0, 0)]);
        let text = seq.render(&space);
        assert_eq!(text, "inc[0]·swap01[0]·inc[0]");
        assert_eq!(BoundSequence::parse(&text, &space).unwrap(), seq);
    }

    #[test]
    fn parse_accepts_commas_and_bare_ids() {
        let space = two_prim_space();
        let seq = BoundSequence::parse("inc,swap01[0]", &space).unwrap();
        assert_eq!(seq.steps, vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn canonical_order_is_skeleton_major() {
        // same length: the skeleton decides before any parameter index
        let x = BoundSequence::new(vec![(0, 1), (0, 0)]);
        let y = BoundSequence::new(vec![(0, 0), (1, 0)]);
        assert_eq!(x.canonical_cmp(&y), Ordering::Less);
        // shorter always precedes longer
        let z = BoundSequence::new(vec![(1, 5)]);
        assert_eq!(z.canonical_cmp(&x), Ordering::Less);
    }

    #[test]
    fn validation_names_the_step() {
        let space = two_prim_space();
        let bad = BoundSequence::new(vec![(0, 0), (5, 0)]);
        let err = bad.validate(&space).unwrap_err();
        assert!(err.to_string().contains("steps[1]"));
        let bad_param = BoundSequence::new(vec![(0, 3)]);
        assert!(bad_param.validate(&space).is_err());
    }
}
