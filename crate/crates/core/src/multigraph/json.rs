//! JSON encoding: `{"p":5,"n":4,"pairs":[{"u":0,"v":1,"layers":[1,2]},..]}`.
//! Pairs are written with `u < v` in lexicographic order, layers ascending
//! and 1-based, and pairs with no layers are omitted.

use serde::{Deserialize, Serialize};

use super::PMultigraph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub u: usize,
    pub v: usize,
    pub layers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultigraphJson {
    pub p: usize,
    pub n: usize,
    pub pairs: Vec<PairJson>,
}

impl From<&PMultigraph> for MultigraphJson {
    fn from(g: &PMultigraph) -> Self {
        MultigraphJson {
            p: g.p(),
            n: g.n(),
            pairs: g
                .pairs()
                .map(|(u, v, _)| PairJson { u, v, layers: g.layer_list(u, v) })
                .collect(),
        }
    }
}

impl TryFrom<MultigraphJson> for PMultigraph {
    type Error = Error;

    fn try_from(j: MultigraphJson) -> Result<PMultigraph> {
        let mut g = PMultigraph::empty(j.p, j.n)?;
        let mut seen = vec![false; crate::hypergraph::binom2(j.n)];
        for (idx, pair) in j.pairs.iter().enumerate() {
            let bad = |message: String| Error::Parse { line: idx + 1, message };
            if pair.u == pair.v || pair.u >= j.n || pair.v >= j.n {
                return Err(bad(format!("invalid pair {{{},{}}} for n = {}", pair.u, pair.v, j.n)));
            }
            let r = crate::graph::pair_rank(pair.u, pair.v);
            if std::mem::replace(&mut seen[r], true) {
                return Err(bad(format!("pair {{{},{}}} listed twice", pair.u, pair.v)));
            }
            let mut mask = 0u8;
            for &l in &pair.layers {
                if l == 0 || l > j.p {
                    return Err(bad(format!("layer {l} outside 1..={}", j.p)));
                }
                if mask >> (l - 1) & 1 == 1 {
                    return Err(bad(format!("layer {l} repeated")));
                }
                mask |= 1 << (l - 1);
            }
            g.set_layers(pair.u, pair.v, mask)?;
        }
        Ok(g)
    }
}

impl PMultigraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&MultigraphJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: MultigraphJson = serde_json::from_str(s)?;
        j.try_into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::extremal_4multigraph;
    use proptest::prelude::*;

    #[test]
    fn layout() {
        let mut g = PMultigraph::empty(5, 4).unwrap();
        g.add(2, 1, 5).unwrap();
        g.add(1, 2, 2).unwrap();
        g.add(0, 3, 1).unwrap();
        assert_eq!(
            g.to_json(),
            r#"{"p":5,"n":4,"pairs":[{"u":0,"v":3,"layers":[1]},{"u":1,"v":2,"layers":[2,5]}]}"#
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            r#"{"p":5,"n":4,"pairs":[{"u":0,"v":0,"layers":[1]}]}"#,
            r#"{"p":5,"n":4,"pairs":[{"u":0,"v":4,"layers":[1]}]}"#,
            r#"{"p":5,"n":4,"pairs":[{"u":0,"v":1,"layers":[6]}]}"#,
            r#"{"p":5,"n":4,"pairs":[{"u":0,"v":1,"layers":[0]}]}"#,
            r#"{"p":5,"n":4,"pairs":[{"u":0,"v":1,"layers":[2,2]}]}"#,
            r#"{"p":5,"n":4,"pairs":[{"u":0,"v":1,"layers":[1]},{"u":1,"v":0,"layers":[2]}]}"#,
            r#"{"p":9,"n":4,"pairs":[]}"#,
            r#"{"p":0,"n":4,"pairs":[]}"#,
            r#"{"p":5,"n":4}"#,
        ] {
            assert!(PMultigraph::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn extremal_roundtrip() {
        let g = extremal_4multigraph(7).unwrap();
        let s = g.to_json();
        let back = PMultigraph::from_json(&s).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json(), s);
    }

    proptest! {
        #[test]
        fn roundtrip_is_bit_exact(p in 1usize..=8, n in 0usize..=7, seed in any::<u64>()) {
            let mut g = PMultigraph::empty(p, n).unwrap();
            let mut state = seed;
            for v in 1..n {
                for u in 0..v {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let mask = (state >> 33) as u8 & (((1u16 << p) - 1) as u8);
                    g.set_layers(u, v, mask).unwrap();
                }
            }
            let s = g.to_json();
            let back = PMultigraph::from_json(&s).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_json(), s);
        }
    }
}
