//! The `.acbm` manifold description format.
//!
//! ```text
//! file       = { line } ;
//! line       = blank | comment | directive ;
//! comment    = "#" { any character } ;
//! directive  = header | dim | xi | params | eta | metric | phi | bracket ;
//! header     = "bmetric-manifold" version ;          (first directive; version 1)
//! dim        = "dim" integer ;                       (odd, at least 3)
//! xi         = "xi" index ;                          (1-based basis index of the Reeb vector)
//! params     = "params" { name } ;
//! eta        = "eta" rational{dim} ;
//! metric     = "metric" NL row{dim} "end" ;          (row i holds g(e_i, e_j))
//! phi        = "phi" NL row{dim} "end" ;             (column j holds the components of phi e_j)
//! row        = rational{dim} NL ;
//! bracket    = "bracket" index index index expr ;    ("bracket i j k c" means [e_i, e_j] has c e_k)
//! rational   = integer [ "/" integer ] ;
//! expr       = polynomial in the declared params with + - * / ^ ( ), division only by constants ;
//! ```
//!
//! Each unordered pair `{i, j}` appears with a given `k` at most once; the
//! reversed bracket is implied by antisymmetry. Brackets not listed are zero.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use num_traits::{One, Zero};

use crate::acbm::{verify_structure, AcbmStructure};
use crate::error::{Error, Result};
use crate::liealg::{jacobi_check, LieAlgebra};
use crate::scalar::{format_rational, parse_expr_with, parse_rational, Polynomial, Rational};
use crate::tensor::{Frame, Matrix, Metric};

pub const FORMAT_HEADER: &str = "bmetric-manifold";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    /// 1-based indices as written in the file.
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Polynomial,
}

/// A parsed file, in file order and file indexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldFile {
    pub version: u32,
    pub dim: usize,
    /// 1-based.
    pub xi: usize,
    pub params: Vec<String>,
    pub eta: Vec<Rational>,
    pub metric: Vec<Vec<Rational>>,
    pub phi: Vec<Vec<Rational>>,
    pub brackets: Vec<BracketEntry>,
}

/// A validated manifold with the Reeb vector moved to the last position.
#[derive(Clone, Debug)]
pub struct Manifold {
    pub file: ManifoldFile,
    pub algebra: LieAlgebra,
    pub structure: AcbmStructure,
    /// Internal basis vector `a` is file basis vector `perm[a]` (0-based).
    pub perm: Vec<usize>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with 1-based columns (in characters).
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((c, b)) = start.take() {
                out.push((c + 1, &line[b..byte]));
            }
        } else if start.is_none() {
            start = Some((col, byte));
        }
    }
    if let Some((c, b)) = start {
        out.push((c + 1, &line[b..]));
    }
    out
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(p) => &line[..p],
        None => line,
    }
}

fn parse_usize(tok: (usize, &str), line: usize, what: &str) -> Result<usize> {
    tok.1
        .parse::<usize>()
        .map_err(|_| perr(line, tok.0, format!("expected {what}, found `{}`", tok.1)))
}

fn parse_rat(tok: (usize, &str), line: usize) -> Result<Rational> {
    parse_rational(tok.1).map_err(|_| perr(line, tok.0, format!("expected a rational p/q, found `{}`", tok.1)))
}

fn parse_row(toks: &[(usize, &str)], line: usize, dim: usize, end_col: usize) -> Result<Vec<Rational>> {
    if toks.len() != dim {
        let col = toks.get(dim).map(|t| t.0).unwrap_or(end_col);
        return Err(perr(line, col, format!("expected {dim} entries, found {}", toks.len())));
    }
    toks.iter().map(|&t| parse_rat(t, line)).collect()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ManifoldFile {
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let mut version = None;
        let mut dim: Option<usize> = None;
        let mut xi = None;
        let mut params: Option<Vec<String>> = None;
        let mut eta = None;
        let mut metric = None;
        let mut phi = None;
        let mut brackets: Vec<BracketEntry> = Vec::new();
        let mut seen_brackets = BTreeSet::new();

        let mut n = 0;
        while n < lines.len() {
            let line_no = n + 1;
            let raw = lines[n];
            n += 1;
            let content = strip_comment(raw);
            let toks = tokens(content);
            let Some(&(col, keyword)) = toks.first() else {
                continue;
            };
            let end_col = content.chars().count() + 1;
            if version.is_none() && keyword != FORMAT_HEADER {
                return Err(perr(line_no, col, format!("expected `{FORMAT_HEADER} {FORMAT_VERSION}` header")));
            }
            let need_dim = |d: Option<usize>| {
                d.ok_or_else(|| perr(line_no, col, format!("`{keyword}` must come after `dim`")))
            };
            let single = |what: &str| -> Result<(usize, &str)> {
                match toks.len() {
                    2 => Ok(toks[1]),
                    1 => Err(perr(line_no, end_col, format!("missing {what}"))),
                    _ => Err(perr(line_no, toks[2].0, "unexpected trailing input")),
                }
            };
            let duplicate = |set: bool| {
                if set {
                    Err(perr(line_no, col, format!("`{keyword}` given twice")))
                } else {
                    Ok(())
                }
            };
            match keyword {
                FORMAT_HEADER => {
                    duplicate(version.is_some())?;
                    let t = single("version")?;
                    let v = parse_usize(t, line_no, "a version number")? as u32;
                    if v != FORMAT_VERSION {
                        return Err(perr(line_no, t.0, format!("unsupported version {v}")));
                    }
                    version = Some(v);
                }
                "dim" => {
                    duplicate(dim.is_some())?;
                    let t = single("dimension")?;
                    let d = parse_usize(t, line_no, "a dimension")?;
                    if d < 3 || d % 2 == 0 {
                        return Err(perr(line_no, t.0, format!("dimension must be odd and at least 3, got {d}")));
                    }
                    dim = Some(d);
                }
                "xi" => {
                    duplicate(xi.is_some())?;
                    let d = need_dim(dim)?;
                    let t = single("index")?;
                    let x = parse_usize(t, line_no, "an index")?;
                    if x == 0 || x > d {
                        return Err(perr(line_no, t.0, format!("index {x} out of range 1..{d}")));
                    }
                    xi = Some(x);
                }
                "params" => {
                    duplicate(params.is_some())?;
                    let mut names: Vec<String> = Vec::new();
                    for &(c, name) in &toks[1..] {
                        if !is_identifier(name) {
                            return Err(perr(line_no, c, format!("invalid parameter name `{name}`")));
                        }
                        if names.iter().any(|p| p == name) {
                            return Err(perr(line_no, c, format!("parameter `{name}` declared twice")));
                        }
                        names.push(name.to_string());
                    }
                    params = Some(names);
                }
                "eta" => {
                    duplicate(eta.is_some())?;
                    let d = need_dim(dim)?;
                    eta = Some(parse_row(&toks[1..], line_no, d, end_col)?);
                }
                "metric" | "phi" => {
                    duplicate(if keyword == "metric" { metric.is_some() } else { phi.is_some() })?;
                    let d = need_dim(dim)?;
                    if toks.len() > 1 {
                        return Err(perr(line_no, toks[1].0, "matrix rows start on the next line"));
                    }
                    let mut rows = Vec::new();
                    loop {
                        let Some(raw) = lines.get(n) else {
                            return Err(perr(line_no, col, format!("`{keyword}` block is not closed by `end`")));
                        };
                        let row_no = n + 1;
                        n += 1;
                        let content = strip_comment(raw);
                        let rt = tokens(content);
                        if rt.is_empty() {
                            continue;
                        }
                        if rt[0].1 == "end" {
                            if rt.len() > 1 {
                                return Err(perr(row_no, rt[1].0, "unexpected trailing input"));
                            }
                            if rows.len() != d {
                                return Err(perr(row_no, rt[0].0, format!("expected {d} rows, found {}", rows.len())));
                            }
                            break;
                        }
                        rows.push(parse_row(&rt, row_no, d, content.chars().count() + 1)?);
                    }
                    if keyword == "metric" {
                        metric = Some(rows);
                    } else {
                        phi = Some(rows);
                    }
                }
                "bracket" => {
                    let d = need_dim(dim)?;
                    if toks.len() < 5 {
                        return Err(perr(line_no, end_col, "expected `bracket i j k expression`"));
                    }
                    let mut ix = [0usize; 3];
                    for (slot, &t) in toks[1..4].iter().enumerate() {
                        let v = parse_usize(t, line_no, "an index")?;
                        if v == 0 || v > d {
                            return Err(perr(line_no, t.0, format!("index {v} out of range 1..{d}")));
                        }
                        ix[slot] = v;
                    }
                    if ix[0] == ix[1] {
                        return Err(perr(line_no, toks[2].0, "bracket of a basis vector with itself"));
                    }
                    let key = (ix[0].min(ix[1]), ix[0].max(ix[1]), ix[2]);
                    if !seen_brackets.insert(key) {
                        return Err(perr(
                            line_no,
                            col,
                            format!("bracket [e{}, e{}] component e{} listed twice", ix[0], ix[1], ix[2]),
                        ));
                    }
                    let declared = params.clone().unwrap_or_default();
                    let expr_col = toks[4].0;
                    let byte = content
                        .char_indices()
                        .nth(expr_col - 1)
                        .map(|(b, _)| b)
                        .unwrap_or(content.len());
                    let allowed = |name: &str| declared.iter().any(|p| p == name);
                    let coeff = parse_expr_with(content[byte..].trim_end(), line_no, expr_col, Some(&allowed))?;
                    brackets.push(BracketEntry {
                        i: ix[0],
                        j: ix[1],
                        k: ix[2],
                        coeff,
                    });
                }
                other => {
                    return Err(perr(line_no, col, format!("unknown directive `{other}`")));
                }
            }
        }

        let end_line = lines.len().max(1);
        let missing = |what: &str| perr(end_line, 1, format!("missing `{what}`"));
        Ok(ManifoldFile {
            version: version.ok_or_else(|| missing(FORMAT_HEADER))?,
            dim: dim.ok_or_else(|| missing("dim"))?,
            xi: xi.ok_or_else(|| missing("xi"))?,
            params: params.unwrap_or_default(),
            eta: eta.ok_or_else(|| missing("eta"))?,
            metric: metric.ok_or_else(|| missing("metric"))?,
            phi: phi.ok_or_else(|| missing("phi"))?,
            brackets,
        })
    }

    /// Canonical text; parsing it gives back an equal value.
    pub fn to_text(&self) -> String {
        let row = |r: &[Rational]| r.iter().map(format_rational).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        let _ = writeln!(s, "{FORMAT_HEADER} {}", self.version);
        let _ = writeln!(s, "dim {}", self.dim);
        let _ = writeln!(s, "xi {}", self.xi);
        if self.params.is_empty() {
            let _ = writeln!(s, "params");
        } else {
            let _ = writeln!(s, "params {}", self.params.join(" "));
        }
        let _ = writeln!(s, "eta {}", row(&self.eta));
        for (name, m) in [("metric", &self.metric), ("phi", &self.phi)] {
            let _ = writeln!(s, "{name}");
            for r in m {
                let _ = writeln!(s, "  {}", row(r));
            }
            let _ = writeln!(s, "end");
        }
        for b in &self.brackets {
            let _ = writeln!(s, "bracket {} {} {} {}", b.i, b.j, b.k, b.coeff);
        }
        s
    }

    /// Validates the file and moves the Reeb vector to the last position.
    pub fn build(&self) -> Result<Manifold> {
        let n = self.dim;
        let algebra = LieAlgebra::from_brackets(
            n,
            self.brackets
                .iter()
                .map(|b| (b.i - 1, b.j - 1, b.k - 1, b.coeff.clone())),
        )?;
        jacobi_check(&algebra).into_result()?;

        let x = self.xi - 1;
        let perm: Vec<usize> = (0..n).filter(|&i| i != x).chain(std::iter::once(x)).collect();
        let labels: Vec<String> = perm
            .iter()
            .map(|&o| if o == x { "xi".to_string() } else { format!("e{}", o + 1) })
            .collect();
        let g = Matrix::from_fn(n, |a, b| self.metric[perm[a]][perm[b]].clone());
        let phi = Matrix::from_fn(n, |a, b| self.phi[perm[a]][perm[b]].clone());
        let eta: Vec<Rational> = perm.iter().map(|&o| self.eta[o].clone()).collect();
        let metric = Metric::new(g).map_err(|e| Error::Validation(format!("metric: {e}")))?;
        let structure = AcbmStructure::new(Frame::with_labels(labels)?, phi, eta, metric)?;

        let check = verify_structure(&structure);
        if let Some(w) = check.witnesses.first() {
            let at: Vec<&str> = w.indices.iter().map(|&i| structure.frame().label(i)).collect();
            return Err(Error::Structure(format!(
                "{} fails at ({}): residual {}",
                w.relation,
                at.join(","),
                format_rational(&w.residual)
            )));
        }
        if !self.eta[x].is_one() || self.eta.iter().enumerate().any(|(i, v)| i != x && !v.is_zero()) {
            return Err(Error::Structure(format!("eta must be the dual of e{}", self.xi)));
        }

        Ok(Manifold {
            file: self.clone(),
            algebra: algebra.permute_basis(&perm),
            structure,
            perm,
        })
    }
}

impl Manifold {
    /// Internal index of a 1-based file index.
    pub fn internal_index(&self, file_index: usize) -> Option<usize> {
        self.perm.iter().position(|&o| o + 1 == file_index)
    }

    /// The algebra with rational values substituted for declared parameters.
    pub fn algebra_with(&self, sets: &[(String, Rational)]) -> Result<LieAlgebra> {
        let mut assignment = std::collections::BTreeMap::new();
        for (name, v) in sets {
            if !self.file.params.iter().any(|p| p == name) {
                return Err(Error::Validation(format!("`{name}` is not a declared parameter")));
            }
            assignment.insert(name.clone(), v.clone());
        }
        Ok(self.algebra.substitute_values(&assignment))
    }
}

pub fn parse_manifold_str(text: &str) -> Result<Manifold> {
    ManifoldFile::parse(text)?.build()
}

pub fn parse_manifold(path: &Path) -> Result<Manifold> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_manifold_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
bmetric-manifold 1
dim 3
xi 3
params a
eta 0 0 1
metric
  1 0 0
  0 -1 0
  0 0 1
end
phi
  0 -1 0
  1 0 0
  0 0 0
end
bracket 1 3 1 a
bracket 2 3 2 a
";

    #[test]
    fn parses_and_round_trips() {
        let f = ManifoldFile::parse(SMALL).unwrap();
        assert_eq!(f.brackets.len(), 2);
        let again = ManifoldFile::parse(&f.to_text()).unwrap();
        assert_eq!(f, again);
        let m = f.build().unwrap();
        assert_eq!(m.structure.frame().labels(), &["e1", "e2", "xi"]);
    }

    #[test]
    fn reports_line_and_column() {
        let bad = SMALL.replace("bracket 2 3 2 a", "bracket 2 3 2 a + b");
        match ManifoldFile::parse(&bad) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 17);
                assert_eq!(column, 19);
            }
            other => panic!("unexpected {other:?}"),
        }
        let bad = SMALL.replace("dim 3", "dim 4");
        assert!(matches!(ManifoldFile::parse(&bad), Err(Error::Parse { line: 2, column: 5, .. })));
    }

    #[test]
    fn duplicate_pair_rejected() {
        let bad = format!("{SMALL}bracket 3 1 1 a\n");
        assert!(matches!(ManifoldFile::parse(&bad), Err(Error::Parse { line: 18, .. })));
    }

    #[test]
    fn xi_not_last_is_moved() {
        let text = "\
bmetric-manifold 1
dim 3
xi 1
eta 1 0 0
metric
  1 0 0
  0 1 0
  0 0 -1
end
phi
  0 0 0
  0 0 -1
  0 1 0
end
";
        let m = parse_manifold_str(text).unwrap();
        assert_eq!(m.perm, vec![1, 2, 0]);
        assert_eq!(m.structure.frame().labels(), &["e2", "e3", "xi"]);
        assert_eq!(m.internal_index(1), Some(2));
    }
}
