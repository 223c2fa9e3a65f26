//! Graphviz export. Points appear in their declaration order, edges in
//! lexicographic order of `(source, target)`.

use std::fmt::Write;

use super::fc::{FcCanonicalFrame, FcPoint};
use super::Frame;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn frame_to_dot(frame: &Frame, name: &str) -> String {
    let labels = frame.labels();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for l in labels {
        writeln!(out, "  {};", quote(l)).unwrap();
    }
    for (x, y) in frame.edges() {
        writeln!(out, "  {} -> {};", quote(&labels[x]), quote(&labels[y])).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The first `k` principal points and `U`.
pub fn fc_frame_to_dot(frame: &FcCanonicalFrame, name: &str, k: u64) -> String {
    let points: Vec<FcPoint> = (0..k)
        .map(FcPoint::Principal)
        .chain([FcPoint::Cofinite])
        .collect();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for p in &points {
        writeln!(out, "  {};", quote(&p.to_string())).unwrap();
    }
    for p in &points {
        for q in &points {
            if frame.related(*p, *q) {
                writeln!(out, "  {} -> {};", quote(&p.to_string()), quote(&q.to_string())).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_output() {
        let frame =
            Frame::with_labelled_edges(vec!["p".into(), "q".into()], &[("q".into(), "p".into()), ("p".into(), "p".into())])
                .unwrap();
        let dot = frame_to_dot(&frame, "X");
        assert_eq!(dot, "digraph \"X\" {\n  \"p\";\n  \"q\";\n  \"p\" -> \"p\";\n  \"q\" -> \"p\";\n}\n");
    }
}
