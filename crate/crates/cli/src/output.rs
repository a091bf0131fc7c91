//! Number formatting and TOML-compatible text output.

use std::fmt::Write;

use mifs::Complex64;

use crate::config::{MapEntry, Pair};

/// How many significant digits to print.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// 12 significant digits.
    Human,
    /// Shortest text that parses back to the same double.
    Exact,
}

impl Precision {
    pub fn from_exact_flag(exact: bool) -> Self {
        if exact {
            Self::Exact
        } else {
            Self::Human
        }
    }

    /// Formats `x` as a valid TOML number.
    pub fn num(self, x: f64) -> String {
        let x = x + 0.0; // no "-0"
        match self {
            Self::Exact => format!("{x:?}"),
            Self::Human => {
                let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
                let rounded = rounded + 0.0;
                if rounded == 0.0 || (1e-5..1e15).contains(&rounded.abs()) {
                    format!("{rounded}")
                } else {
                    format!("{rounded:e}")
                }
            }
        }
    }

    pub fn pair(self, [re, im]: Pair) -> String {
        format!("[{}, {}]", self.num(re), self.num(im))
    }

    pub fn complex(self, z: Complex64) -> String {
        self.pair([z.re, z.im])
    }
}

/// Writes one `[[maps]]` table.
pub fn write_entry(out: &mut String, entry: &MapEntry, p: Precision) {
    out.push_str("[[maps]]\n");
    match entry {
        MapEntry::Spec {
            r,
            m,
            c,
            d_phase,
            derived,
        } => {
            out.push_str("kind = \"spec\"\n");
            let _ = writeln!(out, "r = {}", p.num(*r));
            let _ = writeln!(out, "m = {}", p.pair(*m));
            let _ = writeln!(out, "c = {}", p.pair(*c));
            let _ = writeln!(out, "d_phase = {}", p.num(*d_phase));
            if let Some(derived) = derived {
                let _ = writeln!(
                    out,
                    "derived = {{ a = {}, b = {}, d = {} }}",
                    p.pair(derived.a),
                    p.pair(derived.b),
                    p.pair(derived.d)
                );
            }
        }
        MapEntry::Coeffs { a, b, c, d } => {
            out.push_str("kind = \"coeffs\"\n");
            for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d)] {
                let _ = writeln!(out, "{name} = {}", p.pair(*v));
            }
        }
    }
}
