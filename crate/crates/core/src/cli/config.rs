//! TOML configuration files describing a surface and its curve configuration.
//!
//! ```toml
//! [surface]
//! c1sq = 0
//! c2 = 0
//!
//! [[curve]]
//! label = "E1"
//! genus = 0
//! self_int = -4
//! exceptional = true
//! coeff = "-1"          # optional
//! perturbation = "1/2"  # optional
//!
//! [[intersection]]
//! a = "E1"
//! b = "E4"
//! multiplicity = 1
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;
use toml::Spanned;

use crate::coeff::{parse_rational, render_rational, Rational};
use crate::surface::{Coeffs, Curve, SurfaceModel};

use super::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    surface: RawSurface,
    #[serde(default)]
    curve: Vec<RawCurve>,
    #[serde(default)]
    intersection: Vec<RawIntersection>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    c1sq: i64,
    c2: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    label: Spanned<String>,
    genus: u32,
    self_int: i64,
    exceptional: bool,
    coeff: Option<Spanned<String>>,
    perturbation: Option<Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIntersection {
    a: Spanned<String>,
    b: Spanned<String>,
    multiplicity: Spanned<i64>,
}

/// A parsed configuration file.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFile {
    pub model: SurfaceModel,
    /// Coefficients given in the file; may cover only some curves.
    pub coeffs: Coeffs,
    /// Perturbation weights `b_i` given in the file.
    pub perturbation: Coeffs,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn parse_error(text: &str, offset: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line: line_of(text, offset), message: message.into() }
}

fn rational_field(text: &str, field: &Spanned<String>) -> Result<Rational, CliError> {
    parse_rational(field.get_ref())
        .ok_or_else(|| parse_error(text, field.span().start, format!("expected a rational \"p/q\", got {:?}", field.get_ref())))
}

impl ConfigFile {
    pub fn new(model: SurfaceModel, coeffs: Coeffs) -> Self {
        ConfigFile { model, coeffs, perturbation: Coeffs::new() }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawFile = toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(1, |s| line_of(text, s.start));
            CliError::Parse { line, message: e.message().to_string() }
        })?;
        let mut index = BTreeMap::new();
        let mut curves = Vec::new();
        let mut coeffs = Coeffs::new();
        let mut perturbation = Coeffs::new();
        for c in &raw.curve {
            let label = c.label.get_ref().clone();
            if index.insert(label.clone(), curves.len()).is_some() {
                return Err(parse_error(text, c.label.span().start, format!("duplicate label {label:?}")));
            }
            if let Some(a) = &c.coeff {
                coeffs.insert(label.clone(), rational_field(text, a)?);
            }
            if let Some(b) = &c.perturbation {
                perturbation.insert(label.clone(), rational_field(text, b)?);
            }
            curves.push(Curve::new(label, c.genus, c.self_int, c.exceptional));
        }
        let n = curves.len();
        let mut pair = vec![vec![0u32; n]; n];
        for x in &raw.intersection {
            let find = |l: &Spanned<String>| {
                index
                    .get(l.get_ref())
                    .copied()
                    .ok_or_else(|| parse_error(text, l.span().start, format!("unknown curve {:?}", l.get_ref())))
            };
            let (i, j) = (find(&x.a)?, find(&x.b)?);
            if i == j {
                return Err(parse_error(text, x.b.span().start, "an intersection needs two distinct curves"));
            }
            let m = *x.multiplicity.get_ref();
            if m <= 0 {
                return Err(parse_error(text, x.multiplicity.span().start, "multiplicity must be positive"));
            }
            if pair[i][j] != 0 {
                return Err(parse_error(text, x.a.span().start, "intersection listed twice"));
            }
            let m = u32::try_from(m).map_err(|_| parse_error(text, x.multiplicity.span().start, "multiplicity too large"))?;
            pair[i][j] = m;
            pair[j][i] = m;
        }
        let model = SurfaceModel::new(curves, pair, raw.surface.c1sq, raw.surface.c2)
            .map_err(|e| CliError::Parse { line: 1, message: e.to_string() })?;
        Ok(ConfigFile { model, coeffs, perturbation })
    }

    /// Canonical text form; parsing it back gives the same configuration.
    pub fn render(&self) -> String {
        let q = |s: &str| toml::Value::String(s.to_string()).to_string();
        let mut out = String::new();
        let _ = writeln!(out, "[surface]\nc1sq = {}\nc2 = {}", self.model.c1sq(), self.model.c2());
        for c in self.model.curves() {
            let _ = write!(
                out,
                "\n[[curve]]\nlabel = {}\ngenus = {}\nself_int = {}\nexceptional = {}\n",
                q(&c.label),
                c.genus,
                c.self_int,
                c.exceptional
            );
            if let Some(a) = self.coeffs.get(&c.label) {
                let _ = writeln!(out, "coeff = {}", q(&render_rational(a)));
            }
            if let Some(b) = self.perturbation.get(&c.label) {
                let _ = writeln!(out, "perturbation = {}", q(&render_rational(b)));
            }
        }
        let curves = self.model.curves();
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                let m = self.model.pair(i, j);
                if m > 0 {
                    let _ = write!(
                        out,
                        "\n[[intersection]]\na = {}\nb = {}\nmultiplicity = {m}\n",
                        q(&curves[i].label),
                        q(&curves[j].label)
                    );
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, ratio};

    const STAR: &str = r#"
[surface]
c1sq = 0
c2 = 0

[[curve]]
label = "E1"
genus = 0
self_int = -4
exceptional = true

[[curve]]
label = "E2"
genus = 0
self_int = -4
exceptional = true
coeff = "-1/2"

[[intersection]]
a = "E1"
b = "E2"
multiplicity = 1
"#;

    #[test]
    fn parses_and_round_trips() {
        let f = ConfigFile::parse(STAR).unwrap();
        assert_eq!(f.model.len(), 2);
        assert_eq!(f.model.pair(0, 1), 1);
        assert_eq!(f.coeffs, Coeffs::from([("E2".to_string(), ratio(-1, 2))]));
        let text = f.render();
        let g = ConfigFile::parse(&text).unwrap();
        assert_eq!(f, g);
        assert_eq!(text, g.render());
    }

    #[test]
    fn duplicate_label_reports_line() {
        let text = STAR.replace("label = \"E2\"", "label = \"E1\"");
        match ConfigFile::parse(&text) {
            Err(CliError::Parse { line, message }) => {
                assert_eq!(line, 13);
                assert!(message.contains("duplicate"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_rational_and_unknown_curve() {
        let text = STAR.replace("\"-1/2\"", "\"0.5\"");
        assert!(matches!(ConfigFile::parse(&text), Err(CliError::Parse { line: 17, .. })));
        let text = STAR.replace("b = \"E2\"", "b = \"E9\"");
        assert!(matches!(ConfigFile::parse(&text), Err(CliError::Parse { line: 21, .. })));
        let text = STAR.replace("multiplicity = 1", "multiplicity = 0");
        assert!(matches!(ConfigFile::parse(&text), Err(CliError::Parse { line: 22, .. })));
    }

    #[test]
    fn syntax_error_has_line() {
        let text = STAR.replace("c2 = 0", "c2 = ");
        assert!(matches!(ConfigFile::parse(&text), Err(CliError::Parse { line: 4, .. })));
    }

    #[test]
    fn labels_needing_quotes_survive() {
        let mut f = ConfigFile::parse(STAR).unwrap();
        f.coeffs.insert("E1".into(), rat(3));
        let text = f.render().replace("\"E1\"", "\"E \\\"one\\\"\"");
        let g = ConfigFile::parse(&text).unwrap();
        assert_eq!(g.model.curves()[0].label, "E \"one\"");
        assert_eq!(ConfigFile::parse(&g.render()).unwrap(), g);
    }
}
