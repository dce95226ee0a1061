use std::fmt::Write as _;
use std::path::Path;

use super::{VertexId, WeightedGraph};
use crate::error::{Error, Result};

/// Parses the `u v [w]` edge-list format.
///
/// `#` starts a comment. `u == v` adds `w` to the loop weight of `u`; a loop
/// of weight 0 only declares the vertex. Weights must be non-negative
/// integers (positive for non-loop edges); duplicate edges are an error.
pub fn parse_edge_list(text: &str) -> Result<WeightedGraph> {
    let mut g = WeightedGraph::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() > 3 || tokens.len() < 2 {
            return Err(Error::input(format!(
                "line {}: expected `u v [w]`, got {} tokens",
                lineno + 1,
                tokens.len()
            )));
        }
        let w = match tokens.get(2) {
            None => 1,
            Some(tok) => tok.parse::<u64>().map_err(|_| {
                Error::input(format!(
                    "line {}: weight {tok:?} is not a non-negative integer",
                    lineno + 1
                ))
            })?,
        };
        let u = g.add_vertex(tokens[0]);
        let v = g.add_vertex(tokens[1]);
        g.add_edge(u, v, w)
            .map_err(|e| Error::input(format!("line {}: {}", lineno + 1, strip(e))))?;
    }
    Ok(g)
}

fn strip(e: Error) -> String {
    match e {
        Error::Input(msg) => msg,
        other => other.to_string(),
    }
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<WeightedGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_edge_list(&text)
}

impl WeightedGraph {
    /// Serializes to the edge-list format using the original labels.
    ///
    /// Unit weights are written without the third column. Lines are grouped
    /// by their larger endpoint so that labels first appear in id order, and
    /// parsing the output gives back the same ids. A vertex that would
    /// otherwise appear too late is declared by a loop line, even a zero one.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# n={} edges={}", self.n(), self.edge_count());
        let lower = |v: VertexId| self.neighbors(v).iter().take_while(move |&&(u, _)| u < v);
        for v in 0..self.n() {
            let l = self.loop_weight(v);
            if lower(v).next().is_none() {
                // the next group's first line "v v+1" introduces v in time
                let next_introduces = v + 1 < self.n() && lower(v + 1).next().map(|&(u, _)| u) == Some(v);
                if l > 0 || !next_introduces {
                    let _ = writeln!(out, "{0} {0} {1}", self.label(v), l);
                }
                continue;
            }
            for (u, w) in lower(v) {
                if *w == 1 {
                    let _ = writeln!(out, "{} {}", self.label(*u), self.label(v));
                } else {
                    let _ = writeln!(out, "{} {} {}", self.label(*u), self.label(v), w);
                }
            }
            if l > 0 {
                let _ = writeln!(out, "{0} {0} {1}", self.label(v), l);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_labels_weights_comments_and_loops() {
        let g = parse_edge_list(
            "# header\n\
             a b\n\
             b  c 3   # trailing\n\
             \n\
             c c 2\n\
             c c 1\n\
             z z 0\n",
        )
        .unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.vertex_id("a"), Some(0));
        assert_eq!(g.vertex_id("z"), Some(3));
        assert_eq!(g.edge_weight(1, 2), Some(3));
        assert_eq!(g.loop_weight(2), 3);
        assert_eq!(g.degree(3), 0);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["a b 1.5", "a b -1", "a b 0", "a", "a b 1 2", "a b\nb a"] {
            let err = parse_edge_list(bad).unwrap_err();
            assert!(matches!(err, Error::Input(_)), "{bad}: {err}");
        }
    }

    #[test]
    fn serialization_round_trips() {
        let text = "x y 2\ny w\nq q 4\nlonely lonely 0\n";
        let g = parse_edge_list(text).unwrap();
        let h = parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(h.n(), g.n());
        for (u, v, w) in g.edges() {
            let (hu, hv) = (h.vertex_id(g.label(u)).unwrap(), h.vertex_id(g.label(v)).unwrap());
            assert_eq!(h.edge_weight(hu, hv), Some(w));
        }
        assert_eq!(h.loop_weight(h.vertex_id("q").unwrap()), 4);
        assert!(h.vertex_id("lonely").is_some());
    }

    #[test]
    fn writer_keeps_vertex_ids() {
        use crate::oracle::{generate, GeneratorSpec, Model, WeightMode};
        for seed in 0..40u64 {
            let model = match seed % 4 {
                0 => Model::Forest { n: 30 },
                1 => Model::Degenerate { n: 25, d: 3 },
                2 => Model::Star { leaves: 6 },
                _ => Model::Grid { rows: 3, cols: 5 },
            };
            let mut g = generate(&GeneratorSpec { model, seed, weights: WeightMode::Uniform(4) }).unwrap();
            g.add_loop_weight((seed as usize) % g.n(), seed % 3).unwrap();
            let text = g.to_edge_list();
            let h = parse_edge_list(&text).unwrap();
            assert_eq!(g.labels(), h.labels(), "seed {seed}");
            assert_eq!(g.edges().collect::<Vec<_>>(), h.edges().collect::<Vec<_>>());
            assert!((0..g.n()).all(|v| g.loop_weight(v) == h.loop_weight(v)));
            assert_eq!(h.to_edge_list(), text);
        }
        let path = generate(&GeneratorSpec::unit(Model::Path { n: 3 }, 0)).unwrap();
        assert_eq!(path.to_edge_list(), "# n=3 edges=2\n0 1\n1 2\n");
    }
}
