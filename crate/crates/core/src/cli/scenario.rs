//! Scenario files: TOML with rational weights and polynomial texts.
//!
//! ```toml
//! m = 2
//! a = "1"
//! b = "1/2"
//! c = "0"
//! seed = 0
//! max_degree = 2
//! suites = ["projective-invariance"]
//! alpha = ["x2", "0"]
//! density = "x1^2 + x2"
//!
//! [[christoffel]]
//! upper = 1
//! lower = [2, 2]
//! poly = "x1"
//!
//! [symbol]
//! degree = 2
//! terms = [{ index = [0, 2], poly = "1" }]
//! ```
//!
//! Indices are 1-based. Christoffel entries list each unordered lower pair
//! once; omitted entries are zero.

use std::fmt::Write as _;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::exactpoly::{parse_poly, Poly, Rat};
use crate::geometry::{Connection, OneForm};
use crate::symalg::{FiberPoly, SymField, Variance};

use super::random::RandomGen;
use super::suites::SUITE_NAMES;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChristoffelEntry {
    pub upper: usize,
    pub lower: (usize, usize),
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTerm {
    pub index: Vec<u16>,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub m: usize,
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub christoffel: Vec<ChristoffelEntry>,
    pub alpha: Vec<String>,
    pub symbol_degree: u32,
    pub symbol: Vec<SymbolTerm>,
    pub density: String,
    pub suites: Vec<String>,
    pub seed: u64,
    pub max_degree: u32,
}

/// Parsed module inputs of a scenario.
#[derive(Clone, Debug)]
pub struct Instance {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub conn: Connection,
    pub alpha: OneForm,
    pub symbol: SymField,
    pub density: SymField,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    m: Spanned<i64>,
    #[serde(default)]
    a: Option<Spanned<String>>,
    #[serde(default)]
    b: Option<Spanned<String>>,
    #[serde(default)]
    c: Option<Spanned<String>>,
    #[serde(default)]
    christoffel: Vec<RawChristoffel>,
    #[serde(default)]
    alpha: Option<Spanned<Vec<Spanned<String>>>>,
    symbol: Spanned<RawSymbol>,
    density: Spanned<String>,
    #[serde(default)]
    suites: Vec<Spanned<String>>,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    max_degree: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChristoffel {
    upper: Spanned<i64>,
    lower: Spanned<Vec<i64>>,
    poly: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSymbol {
    degree: u32,
    #[serde(default)]
    terms: Vec<RawTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    index: Spanned<Vec<i64>>,
    poly: Spanned<String>,
}

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |p| before.len() - p - 1) + 1;
    (line, col)
}

struct Ctx<'t> {
    text: &'t str,
}

impl Ctx<'_> {
    fn err(&self, span: Range<usize>, message: impl Into<String>) -> Error {
        let (line, column) = line_col(self.text, span.start);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn rat(&self, v: &Option<Spanned<String>>, default: Rat) -> Result<Rat> {
        match v {
            None => Ok(default),
            Some(s) => s
                .get_ref()
                .trim()
                .parse::<Rat>()
                .map_err(|_| self.err(s.span(), format!("invalid rational '{}'", s.get_ref()))),
        }
    }

    fn index(&self, v: i64, m: usize, span: Range<usize>) -> Result<usize> {
        if v < 1 || v as usize > m {
            return Err(self.err(span, format!("index {v} outside 1..={m}")));
        }
        Ok(v as usize - 1)
    }

    /// Polynomial errors are placed at the offending character inside the
    /// quoted string; basic strings are assumed not to contain escapes.
    fn poly(&self, s: &Spanned<String>, m: usize) -> Result<()> {
        parse_poly(s.get_ref(), m).map(|_| ()).map_err(|e| {
            let start = s.span().start + 1 + e.column.saturating_sub(1);
            self.err(start..start, e.message)
        })
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let raw: RawScenario = toml::from_str(text).map_err(|e| {
            let span = e.span().unwrap_or(0..0);
            let (line, column) = line_col(text, span.start);
            Error::Parse {
                line,
                column,
                message: e.message().trim().to_string(),
            }
        })?;
        let cx = Ctx { text };
        let m = *raw.m.get_ref();
        if !(2..=7).contains(&m) {
            return Err(cx.err(raw.m.span(), format!("dimension {m} outside 2..=7")));
        }
        let m = m as usize;
        let mut christoffel = Vec::new();
        for e in &raw.christoffel {
            let upper = cx.index(*e.upper.get_ref(), m, e.upper.span())? + 1;
            let lower = e.lower.get_ref();
            if lower.len() != 2 {
                return Err(cx.err(e.lower.span(), "lower must list two indices"));
            }
            let i = cx.index(lower[0], m, e.lower.span())? + 1;
            let j = cx.index(lower[1], m, e.lower.span())? + 1;
            cx.poly(&e.poly, m)?;
            christoffel.push(ChristoffelEntry {
                upper,
                lower: (i, j),
                poly: e.poly.get_ref().clone(),
            });
        }
        let alpha = match &raw.alpha {
            None => vec!["0".to_string(); m],
            Some(list) => {
                if list.get_ref().len() != m {
                    return Err(cx.err(list.span(), format!("alpha needs {m} components")));
                }
                for s in list.get_ref() {
                    cx.poly(s, m)?;
                }
                list.get_ref().iter().map(|s| s.get_ref().clone()).collect()
            }
        };
        let sym = raw.symbol.get_ref();
        let mut symbol = Vec::new();
        for t in &sym.terms {
            let idx = t.index.get_ref();
            if idx.len() != m || idx.iter().any(|&v| !(0..=u16::MAX as i64).contains(&v)) {
                return Err(cx.err(t.index.span(), format!("index needs {m} nonnegative entries")));
            }
            if idx.iter().sum::<i64>() != sym.degree as i64 {
                return Err(cx.err(t.index.span(), format!("index does not have degree {}", sym.degree)));
            }
            cx.poly(&t.poly, m)?;
            symbol.push(SymbolTerm {
                index: idx.iter().map(|&v| v as u16).collect(),
                poly: t.poly.get_ref().clone(),
            });
        }
        cx.poly(&raw.density, m)?;
        let mut suites = Vec::new();
        for s in &raw.suites {
            if !SUITE_NAMES.contains(&s.get_ref().as_str()) {
                return Err(cx.err(s.span(), format!("unknown suite '{}'", s.get_ref())));
            }
            suites.push(s.get_ref().clone());
        }
        let scenario = Scenario {
            m,
            a: cx.rat(&raw.a, Rat::one())?,
            b: cx.rat(&raw.b, Rat::zero())?,
            c: cx.rat(&raw.c, Rat::zero())?,
            christoffel,
            alpha,
            symbol_degree: sym.degree,
            symbol,
            density: raw.density.get_ref().clone(),
            suites,
            seed: raw.seed,
            max_degree: raw.max_degree.unwrap_or(2),
        };
        if scenario.a.is_zero() {
            return Err(cx.err(raw.a.as_ref().map_or(0..0, |s| s.span()), "a must be nonzero"));
        }
        scenario.instance().map_err(|e| match e {
            Error::Torsion { .. } => cx.err(raw.christoffel.first().map_or(0..0, |c| c.poly.span()), e.to_string()),
            other => other,
        })?;
        Ok(scenario)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Scenario(format!("{}: {e}", path.display())))?;
        Scenario::parse(&text)
    }

    fn poly(&self, s: &str) -> Result<Poly> {
        parse_poly(s, self.m).map_err(|e| Error::Scenario(format!("'{s}': {}", e.message)))
    }

    pub fn instance(&self) -> Result<Instance> {
        let m = self.m;
        let mut entries = Vec::new();
        for e in &self.christoffel {
            entries.push((e.upper - 1, e.lower.0 - 1, e.lower.1 - 1, self.poly(&e.poly)?));
        }
        let conn = Connection::from_entries(m, &entries)?;
        let alpha = OneForm::new(self.alpha.iter().map(|s| self.poly(s)).collect::<Result<_>>()?)?;
        let mut rep = FiberPoly::zero(m, m);
        for t in &self.symbol {
            rep.add_term(crate::exactpoly::Mono::from_exponents(&t.index), &self.poly(&t.poly)?);
        }
        let symbol = SymField::new(Variance::Contra, self.symbol_degree, self.c.clone(), rep)?;
        let density = SymField::scalar(self.poly(&self.density)?, self.b.clone());
        Ok(Instance {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            conn,
            alpha,
            symbol,
            density,
        })
    }

    /// Canonical TOML text; `parse(to_toml())` returns an equal scenario.
    pub fn to_toml(&self) -> String {
        let q = |s: &str| format!("\"{s}\"");
        let list = |v: &[String]| v.iter().map(|s| q(s)).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        let _ = writeln!(out, "m = {}", self.m);
        let _ = writeln!(out, "a = {}", q(&self.a.to_string()));
        let _ = writeln!(out, "b = {}", q(&self.b.to_string()));
        let _ = writeln!(out, "c = {}", q(&self.c.to_string()));
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "max_degree = {}", self.max_degree);
        let _ = writeln!(out, "suites = [{}]", list(&self.suites));
        let _ = writeln!(out, "alpha = [{}]", list(&self.alpha));
        let _ = writeln!(out, "density = {}", q(&self.density));
        for e in &self.christoffel {
            let _ = writeln!(
                out,
                "\n[[christoffel]]\nupper = {}\nlower = [{}, {}]\npoly = {}",
                e.upper,
                e.lower.0,
                e.lower.1,
                q(&e.poly)
            );
        }
        let _ = writeln!(out, "\n[symbol]\ndegree = {}\nterms = [", self.symbol_degree);
        for t in &self.symbol {
            let idx = t.index.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ");
            let _ = writeln!(out, "  {{ index = [{idx}], poly = {} }},", q(&t.poly));
        }
        out.push_str("]\n");
        out
    }
}

/// Weight pairs `(b, c)` drawn by [`generate_random`].
pub const RANDOM_WEIGHTS: [(i64, i64, i64, i64); 3] = [(0, 1, 0, 1), (1, 2, 0, 1), (0, 1, 1, 3)];

/// Deterministic pseudo-random scenario: `Gamma` of degree at most
/// `max_degree`, `alpha` of degree at most 1, a symbol of degree 1 to 3 and a
/// density, running every suite.
pub fn generate_random(seed: u64, m: usize, max_degree: u32) -> Result<Scenario> {
    if !(2..=3).contains(&m) {
        return Err(Error::InvalidDimension(m));
    }
    let mut g = RandomGen::new(seed);
    let (bn, bd, cn, cd) = RANDOM_WEIGHTS[g.index(RANDOM_WEIGHTS.len())];
    let (b, c) = (Rat::new(bn, bd), Rat::new(cn, cd));
    let k = 1 + g.index(3) as u32;
    let conn = g.connection(m, max_degree)?;
    let mut christoffel = Vec::new();
    for k in 0..m {
        for i in 0..m {
            for j in i..m {
                let p = conn.gamma(k, i, j);
                if !p.is_zero() {
                    christoffel.push(ChristoffelEntry {
                        upper: k + 1,
                        lower: (i + 1, j + 1),
                        poly: p.to_string(),
                    });
                }
            }
        }
    }
    let alpha = g.one_form(m, 1)?.comps().iter().map(|p| p.to_string()).collect();
    let sym = g.symbol(m, k, max_degree, &c)?;
    let symbol = sym
        .to_records()
        .into_iter()
        .map(|(index, poly)| SymbolTerm { index, poly })
        .collect();
    let density = g.density(m, max_degree, &b).scalar_value().to_string();
    Ok(Scenario {
        m,
        a: Rat::one(),
        b,
        c,
        christoffel,
        alpha,
        symbol_degree: k,
        symbol,
        density,
        suites: SUITE_NAMES.iter().map(|s| s.to_string()).collect(),
        seed,
        max_degree,
    })
}
