//! Byte-deterministic CSV rendering: `#`-comment config echo, a header row,
//! then records. Floats are written at 17 significant digits, line endings
//! are LF, and identical inputs render identical bytes.

use lowdisc::textio::fmt_g17;

use crate::harness::{CompareRecord, EnvelopeRecord, TraceRecord};

fn push_comments(out: &mut String, comments: &[String]) {
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
}

/// `n,raw,scaled` records.
pub fn render_trace(comments: &[String], records: &[TraceRecord]) -> String {
    let mut out = String::new();
    push_comments(&mut out, comments);
    out.push_str("n,raw,scaled\n");
    for r in records {
        out.push_str(&format!("{},{},{}\n", r.n, fmt_g17(r.raw), fmt_g17(r.scaled)));
    }
    out
}

/// `n,raw_a,raw_b,score_b,prop_b` records.
pub fn render_compare(comments: &[String], records: &[CompareRecord]) -> String {
    let mut out = String::new();
    push_comments(&mut out, comments);
    out.push_str("n,raw_a,raw_b,score_b,prop_b\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            fmt_g17(r.raw_a),
            fmt_g17(r.raw_b),
            fmt_g17(r.score_b),
            fmt_g17(r.prop_b)
        ));
    }
    out
}

/// `n,min,mean,max` records (scaled-value envelope).
pub fn render_envelope(comments: &[String], records: &[EnvelopeRecord]) -> String {
    let mut out = String::new();
    push_comments(&mut out, comments);
    out.push_str("n,min,mean,max\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            fmt_g17(r.min),
            fmt_g17(r.mean),
            fmt_g17(r.max)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_rendering_is_exact() {
        let recs = vec![
            TraceRecord {
                n: 1000,
                raw: 0.5,
                scaled: 0.1,
            },
            TraceRecord {
                n: 2000,
                raw: 2.0 / 3.0,
                scaled: f64::INFINITY,
            },
        ];
        let text = render_trace(&["seq: kronecker".to_string()], &recs);
        assert_eq!(
            text,
            "# seq: kronecker\n\
             n,raw,scaled\n\
             1000,0.50000000000000000,0.10000000000000001\n\
             2000,0.66666666666666663,inf\n"
        );
    }

    #[test]
    fn compare_and_envelope_headers() {
        let c = render_compare(&[], &[]);
        assert_eq!(c, "n,raw_a,raw_b,score_b,prop_b\n");
        let e = render_envelope(&[], &[]);
        assert_eq!(e, "n,min,mean,max\n");
    }
}
