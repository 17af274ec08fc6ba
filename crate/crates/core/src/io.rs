//! Text and JSON encodings of hypergraphs.
//!
//! Text: a header line `n m`, then `m` lines `a b c` (0-indexed, ascending
//! within a line, lines in colex order). JSON: `{"n":7,"edges":[[0,1,2],..]}`
//! with the same ordering. Writers always emit the canonical ordering; readers
//! accept any order but reject repeated edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{binom3, Hypergraph, Triple, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 3]>,
}

impl From<&Hypergraph> for HypergraphJson {
    fn from(h: &Hypergraph) -> Self {
        HypergraphJson { n: h.n(), edges: h.edges().map(|t| t.vertices()).collect() }
    }
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = Error;

    fn try_from(j: HypergraphJson) -> Result<Hypergraph> {
        build(j.n, j.edges.into_iter().enumerate().map(|(i, e)| (i + 1, e)))
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn build<I>(n: usize, edges: I) -> Result<Hypergraph>
where
    I: IntoIterator<Item = (usize, [usize; 3])>,
{
    if n > MAX_VERTICES {
        return Err(parse_err(1, format!("n = {n} exceeds the cap of {MAX_VERTICES}")));
    }
    let mut h = Hypergraph::empty(n)?;
    for (line, [a, b, c]) in edges {
        if a.max(b).max(c) >= n {
            return Err(parse_err(line, format!("vertex out of range for n = {n}")));
        }
        let t = Triple::new(a, b, c).map_err(|e| parse_err(line, e.to_string()))?;
        if !h.insert(t)? {
            return Err(parse_err(line, format!("repeated edge {a} {b} {c}")));
        }
    }
    Ok(h)
}

pub fn to_text(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.edge_count());
    for t in h.edges() {
        let [a, b, c] = t.vertices();
        out.push_str(&format!("{a} {b} {c}\n"));
    }
    out
}

pub fn from_text(s: &str) -> Result<Hypergraph> {
    let mut lines = s.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let nums = parse_numbers::<2>(hline, header)?;
    let (n, m) = (nums[0], nums[1]);
    if n > MAX_VERTICES {
        return Err(parse_err(hline, format!("n = {n} exceeds the cap of {MAX_VERTICES}")));
    }
    if m > binom3(n) {
        return Err(parse_err(hline, format!("m = {m} exceeds C({n},3)")));
    }
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        if text.is_empty() {
            continue;
        }
        if edges.len() == m {
            return Err(parse_err(line, format!("more than the declared {m} edges")));
        }
        edges.push((line, parse_numbers::<3>(line, text)?));
    }
    if edges.len() != m {
        return Err(parse_err(hline, format!("declared {m} edges, found {}", edges.len())));
    }
    build(n, edges)
}

fn parse_numbers<const K: usize>(line: usize, text: &str) -> Result<[usize; K]> {
    let mut out = [0usize; K];
    let mut fields = text.split_whitespace();
    for slot in out.iter_mut() {
        let f = fields.next().ok_or_else(|| parse_err(line, format!("expected {K} integers")))?;
        *slot = f.parse().map_err(|_| parse_err(line, format!("`{f}` is not an integer")))?;
    }
    if fields.next().is_some() {
        return Err(parse_err(line, format!("expected exactly {K} integers")));
    }
    Ok(out)
}

pub fn to_json(h: &Hypergraph) -> String {
    serde_json::to_string(&HypergraphJson::from(h)).expect("plain data serializes")
}

pub fn from_json(s: &str) -> Result<Hypergraph> {
    let j: HypergraphJson = serde_json::from_str(s)?;
    j.try_into()
}

/// Reads either format, choosing JSON when the input starts with `{`.
pub fn parse_hypergraph(s: &str) -> Result<Hypergraph> {
    if s.trim_start().starts_with('{') {
        from_json(s)
    } else {
        from_text(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct, Family};
    use proptest::prelude::*;

    #[test]
    fn text_layout() {
        let h = Hypergraph::from_edges(5, [[2, 3, 4], [0, 1, 2], [1, 3, 0]]).unwrap();
        assert_eq!(to_text(&h), "5 3\n0 1 2\n0 1 3\n2 3 4\n");
        assert_eq!(to_json(&h), r#"{"n":5,"edges":[[0,1,2],[0,1,3],[2,3,4]]}"#);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "5",
            "5 1\n0 1\n",
            "5 1\n0 1 5\n",
            "5 1\n0 0 1\n",
            "5 2\n0 1 2\n2 1 0\n",
            "5 1\n0 1 2\n1 2 3\n",
            "5 2\n0 1 2\n",
            "65 0\n",
            "4 5\n",
            "4 1\n0 1 x\n",
        ] {
            assert!(from_text(bad).is_err(), "{bad:?}");
        }
        assert!(from_json(r#"{"n":4,"edges":[[0,1,4]]}"#).is_err());
        assert!(from_json(r#"{"n":4,"edges":[],"extra":1}"#).is_err());
    }

    #[test]
    fn accepts_unsorted_input() {
        let h = from_text("4 2\n3 2 1\n\n 0 2 1 \n").unwrap();
        assert_eq!(to_text(&h), "4 2\n0 1 2\n1 2 3\n");
    }

    #[test]
    fn named_constructions_roundtrip() {
        for (f, n) in [(Family::Fano, 7), (Family::J7, 7), (Family::BalancedBipartite, 12)] {
            let h = construct(f, n).unwrap();
            assert_eq!(from_text(&to_text(&h)).unwrap(), h);
            assert_eq!(parse_hypergraph(&to_json(&h)).unwrap(), h);
        }
    }

    proptest! {
        #[test]
        fn roundtrip_is_bit_exact(n in 3usize..=12, bits in proptest::collection::vec(any::<bool>(), 220)) {
            let mut h = Hypergraph::empty(n).unwrap();
            for r in 0..binom3(n) {
                if bits[r] {
                    h.insert(Triple::from_rank(r)).unwrap();
                }
            }
            let text = to_text(&h);
            let json = to_json(&h);
            prop_assert_eq!(to_text(&from_text(&text).unwrap()), text);
            prop_assert_eq!(to_json(&from_json(&json).unwrap()), json);
        }

        #[test]
        fn parser_never_panics(s in ".{0,200}") {
            let _ = parse_hypergraph(&s);
        }
    }
}
