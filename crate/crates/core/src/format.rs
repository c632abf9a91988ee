//! The `.hls` algebra file format.
//!
//! ```text
//! # comments start with '#'
//! [algebra]
//! name = "affine"
//! basis = "e1, e2, e3"
//! parity = "e1:0, e2:0, e3:1"
//! degree = "e1:0, e2:0, e3:0"     # optional
//!
//! [bracket]
//! "e1,e2" = "e1"                   # only pairs in basis order
//!
//! [alpha]                          # optional, identity when absent
//! "e1" = "e1"
//! "e2" = "e2"
//! "e3" = "e3"
//!
//! [form]                           # optional Gram entries, omitted = 0
//! "e3,e3" = "1"
//! ```
//!
//! Keys and values may be quoted or bare. Scalars are integers or `p/q`;
//! linear combinations follow `term (("+" | "-") term)*` with
//! `term := [scalar "*"] label | scalar`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratlin::{format_scalar, parse_scalar, Scalar};
use crate::superalgebra::{AlgebraSpec, BasisDecl, BracketDecl, LinComb, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn err(self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn shifted(self, by: usize) -> Pos {
        Pos {
            line: self.line,
            column: self.column + by,
        }
    }
}

#[derive(Clone, Debug)]
struct Entry {
    key: String,
    key_pos: Pos,
    value: String,
    value_pos: Pos,
}

#[derive(Clone, Debug)]
struct Section {
    name: String,
    pos: Pos,
    entries: Vec<Entry>,
}

/// Gram-matrix entry from a `[form]` section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormEntry {
    pub left: String,
    pub right: String,
    pub value: Scalar,
}

/// A parsed algebra file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpecFile {
    pub algebra: AlgebraSpec,
    pub form: Option<Vec<FormEntry>>,
}

const SECTIONS: [&str; 4] = ["algebra", "bracket", "alpha", "form"];

fn strip_comment(line: &str) -> &str {
    let mut in_quote = false;
    for (i, ch) in line.char_indices() {
        match ch {
            '"' => in_quote = !in_quote,
            '#' if !in_quote => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Split off one possibly-quoted token; returns (token, offset of token
/// start, rest, offset of rest).
fn unquote(raw: &str, pos: Pos) -> Result<(String, Pos)> {
    let lead = raw.len() - raw.trim_start().len();
    let t = raw.trim();
    let pos = pos.shifted(raw[..lead].chars().count());
    if let Some(inner) = t.strip_prefix('"') {
        let Some(inner) = inner.strip_suffix('"') else {
            return Err(pos.err("unterminated string"));
        };
        if inner.contains('"') {
            return Err(pos.err("stray quote inside string"));
        }
        Ok((inner.to_string(), pos.shifted(1)))
    } else {
        if t.contains('"') {
            return Err(pos.err("stray quote"));
        }
        Ok((t.to_string(), pos))
    }
}

fn parse_document(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (lineno, raw_line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = strip_comment(raw_line);
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let start = Pos {
            line: line_no,
            column: line[..indent].chars().count() + 1,
        };
        let body = line.trim();
        if let Some(rest) = body.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(start.err("expected `]` to close the section header"));
            };
            let name = name.trim();
            if !SECTIONS.contains(&name) {
                return Err(start.err(format!("unknown section [{name}]")));
            }
            if sections.iter().any(|s| s.name == name) {
                return Err(start.err(format!("duplicate section [{name}]")));
            }
            sections.push(Section {
                name: name.to_string(),
                pos: start,
                entries: Vec::new(),
            });
            continue;
        }
        let Some(section) = sections.last_mut() else {
            return Err(start.err("entry outside of any section"));
        };
        let eq = find_unquoted(line, '=').ok_or_else(|| start.err("expected `key = value`"))?;
        let (key, key_pos) = unquote(
            &line[..eq],
            Pos {
                line: line_no,
                column: 1,
            },
        )?;
        let value_col = line[..eq + 1].chars().count() + 1;
        let (value, value_pos) = unquote(
            &line[eq + 1..],
            Pos {
                line: line_no,
                column: value_col,
            },
        )?;
        if key.is_empty() {
            return Err(key_pos.err("empty key"));
        }
        if let Some(prev) = section.entries.iter().find(|e| e.key == key) {
            return Err(key_pos.err(format!(
                "duplicate key `{key}` (first defined on line {})",
                prev.key_pos.line
            )));
        }
        section.entries.push(Entry {
            key,
            key_pos,
            value,
            value_pos,
        });
    }
    Ok(sections)
}

fn find_unquoted(line: &str, target: char) -> Option<usize> {
    let mut in_quote = false;
    for (i, ch) in line.char_indices() {
        match ch {
            '"' => in_quote = !in_quote,
            c if c == target && !in_quote => return Some(i),
            _ => {}
        }
    }
    None
}

fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Split a comma-separated list, tracking the column of each item.
fn split_list(value: &str, pos: Pos) -> Vec<(String, Pos)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in value.split(',') {
        let lead = part.len() - part.trim_start().len();
        let col = value[..offset + lead].chars().count();
        out.push((part.trim().to_string(), pos.shifted(col)));
        offset += part.len() + 1;
    }
    out
}

/// Parse a linear combination such as `2*e1 - 1/2*e3`.
fn parse_lincomb(text: &str, pos: Pos) -> Result<LinComb> {
    let normalized = text.replace('\u{2212}', "-");
    let chars: Vec<char> = normalized.chars().collect();
    let mut i = 0;
    let mut terms = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            if first {
                return Err(pos.err("empty linear combination"));
            }
            return Err(pos.shifted(i).err("expected a term after the sign"));
        }
        let mut sign = Scalar::one();
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(pos.shifted(i).err("expected `+` or `-` between terms"));
        }
        first = false;
        let term_start = i;
        while i < chars.len() && !matches!(chars[i], '+' | '-') {
            i += 1;
        }
        let term: String = chars[term_start..i].iter().collect();
        let term_pos = pos.shifted(term_start);
        let term = term.trim();
        if term.is_empty() {
            return Err(term_pos.err("expected a term"));
        }
        let (coeff, label) = match term.split_once('*') {
            Some((c, l)) => {
                let c = parse_scalar(c.trim()).ok_or_else(|| term_pos.err(format!("bad scalar `{}`", c.trim())))?;
                (c, Some(l.trim()))
            }
            None if term.starts_with(|c: char| c.is_ascii_digit()) => (
                parse_scalar(term).ok_or_else(|| term_pos.err(format!("bad scalar `{term}`")))?,
                None,
            ),
            None => (Scalar::one(), Some(term)),
        };
        match label {
            Some(l) if is_label(l) => terms.push((sign * coeff, l.to_string())),
            Some(l) => return Err(term_pos.err(format!("bad label `{l}`"))),
            None if coeff.is_zero() => {}
            None => return Err(term_pos.err("constant term in a linear combination")),
        }
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
    }
    Ok(LinComb(terms))
}

fn check_labels(comb: &LinComb, known: &HashMap<String, usize>, pos: Pos) -> Result<()> {
    for (_, l) in &comb.0 {
        if !known.contains_key(l) {
            return Err(pos.err(format!("unknown label `{l}`")));
        }
    }
    Ok(())
}

fn label_pair(entry: &Entry, known: &HashMap<String, usize>) -> Result<(String, String)> {
    let Some((a, b)) = entry.key.split_once(',') else {
        return Err(entry
            .key_pos
            .err(format!("expected `label,label`, found `{}`", entry.key)));
    };
    let (a, b) = (a.trim(), b.trim());
    for l in [a, b] {
        if !known.contains_key(l) {
            return Err(entry.key_pos.err(format!("unknown label `{l}`")));
        }
    }
    Ok((a.to_string(), b.to_string()))
}

/// Parse an algebra file. Every location in an error refers to the input.
pub fn parse_spec(text: &str) -> Result<AlgebraSpecFile> {
    let sections = parse_document(text)?;
    let find = |name: &str| sections.iter().find(|s| s.name == name);
    let Some(alg) = find("algebra") else {
        return Err(Pos { line: 1, column: 1 }.err("missing [algebra] section"));
    };

    let mut name = String::new();
    let mut basis: Option<(Vec<String>, Pos)> = None;
    let mut parity_map: Option<&Entry> = None;
    let mut degree_map: Option<&Entry> = None;
    for e in &alg.entries {
        match e.key.as_str() {
            "name" => name = e.value.clone(),
            "basis" => {
                let mut labels = Vec::new();
                if !e.value.trim().is_empty() {
                    for (l, p) in split_list(&e.value, e.value_pos) {
                        if !is_label(&l) {
                            return Err(p.err(format!("bad label `{l}`")));
                        }
                        if labels.contains(&l) {
                            return Err(p.err(format!("duplicate basis label `{l}`")));
                        }
                        labels.push(l);
                    }
                }
                basis = Some((labels, e.value_pos));
            }
            "parity" => parity_map = Some(e),
            "degree" => degree_map = Some(e),
            other => return Err(e.key_pos.err(format!("unknown key `{other}` in [algebra]"))),
        }
    }
    let Some((labels, _)) = basis else {
        return Err(alg.pos.err("[algebra] needs a `basis` entry"));
    };
    let known: HashMap<String, usize> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();

    let read_map = |entry: &Entry, what: &str| -> Result<Vec<Option<i64>>> {
        let mut out = vec![None; labels.len()];
        if entry.value.trim().is_empty() {
            return Ok(out);
        }
        for (item, p) in split_list(&entry.value, entry.value_pos) {
            let Some((l, v)) = item.split_once(':') else {
                return Err(p.err(format!("expected `label:{what}`")));
            };
            let l = l.trim();
            let &i = known.get(l).ok_or_else(|| p.err(format!("unknown label `{l}`")))?;
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| p.err(format!("bad {what} `{}`", v.trim())))?;
            if out[i].replace(v).is_some() {
                return Err(p.err(format!("{what} of `{l}` given twice")));
            }
        }
        Ok(out)
    };

    let parities = match parity_map {
        None => vec![Parity::Even; labels.len()],
        Some(e) => read_map(e, "parity")?
            .into_iter()
            .enumerate()
            .map(|(i, p)| match p {
                None => Err(e.value_pos.err(format!("missing parity for `{}`", labels[i]))),
                Some(b) => u8::try_from(b)
                    .ok()
                    .and_then(Parity::from_bit)
                    .ok_or_else(|| e.value_pos.err(format!("parity of `{}` must be 0 or 1", labels[i]))),
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let degrees = match degree_map {
        None => vec![None; labels.len()],
        Some(e) => {
            let d = read_map(e, "degree")?;
            if let Some(i) = d.iter().position(Option::is_none) {
                return Err(e.value_pos.err(format!("missing degree for `{}`", labels[i])));
            }
            d
        }
    };

    let mut brackets = Vec::new();
    if let Some(sec) = find("bracket") {
        for e in &sec.entries {
            let (left, right) = label_pair(e, &known)?;
            if known[&left] > known[&right] {
                return Err(e.key_pos.err(format!(
                    "bracket `{left},{right}` must list the labels in basis order (`{right},{left}`)"
                )));
            }
            let value = parse_lincomb(&e.value, e.value_pos)?;
            check_labels(&value, &known, e.value_pos)?;
            brackets.push(BracketDecl { left, right, value });
        }
    }

    let alpha = match find("alpha") {
        None => None,
        Some(sec) => {
            let mut rows = Vec::new();
            for e in &sec.entries {
                if !known.contains_key(&e.key) {
                    return Err(e.key_pos.err(format!("unknown label `{}`", e.key)));
                }
                let value = parse_lincomb(&e.value, e.value_pos)?;
                check_labels(&value, &known, e.value_pos)?;
                rows.push((e.key.clone(), value));
            }
            if let Some(missing) = labels.iter().find(|l| !rows.iter().any(|(k, _)| k == *l)) {
                return Err(sec.pos.err(format!("[alpha] has no row for `{missing}`")));
            }
            Some(rows)
        }
    };

    let form = match find("form") {
        None => None,
        Some(sec) => Some(read_form_entries(sec, &known)?),
    };

    Ok(AlgebraSpecFile {
        algebra: AlgebraSpec {
            name,
            basis: labels
                .iter()
                .enumerate()
                .map(|(i, l)| BasisDecl {
                    label: l.clone(),
                    parity: parities[i],
                    degree: degrees[i],
                })
                .collect(),
            brackets,
            alpha,
        },
        form,
    })
}

fn read_form_entries(sec: &Section, known: &HashMap<String, usize>) -> Result<Vec<FormEntry>> {
    sec.entries
        .iter()
        .map(|e| {
            let (left, right) = label_pair(e, known)?;
            let value = parse_scalar(&e.value).ok_or_else(|| e.value_pos.err(format!("bad scalar `{}`", e.value)))?;
            Ok(FormEntry { left, right, value })
        })
        .collect()
}

/// Parse a file holding only a `[form]` section, against the given labels.
pub fn parse_form(text: &str, labels: &[String]) -> Result<Vec<FormEntry>> {
    let sections = parse_document(text)?;
    let known: HashMap<String, usize> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let Some(sec) = sections.iter().find(|s| s.name == "form") else {
        return Err(Pos { line: 1, column: 1 }.err("missing [form] section"));
    };
    if let Some(other) = sections.iter().find(|s| s.name != "form") {
        return Err(other
            .pos
            .err(format!("unexpected section [{}] in a form file", other.name)));
    }
    read_form_entries(sec, &known)
}

pub fn format_lincomb(comb: &LinComb) -> String {
    let mut out = String::new();
    for (c, label) in &comb.0 {
        if c.is_zero() {
            continue;
        }
        let negative = c < &Scalar::zero();
        let mag = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format_scalar(&mag));
            out.push('*');
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parse a linear combination such as `e1 - 1/2*e3` into coordinates
/// over `labels`.
pub fn parse_vector(text: &str, labels: &[String]) -> Result<Vec<Scalar>> {
    let comb = parse_lincomb(text, Pos { line: 1, column: 1 })?;
    let mut v = vec![Scalar::zero(); labels.len()];
    for (c, label) in comb.0 {
        let i = labels
            .iter()
            .position(|l| *l == label)
            .ok_or_else(|| Error::UnknownLabel(label.clone()))?;
        v[i] += c;
    }
    Ok(v)
}

/// Canonical text of an algebra file.
pub fn write_spec(spec: &AlgebraSpec, form: Option<&[FormEntry]>) -> String {
    let mut out = String::new();
    out.push_str("[algebra]\n");
    out.push_str(&format!("name = \"{}\"\n", spec.name));
    let labels: Vec<&str> = spec.basis.iter().map(|b| b.label.as_str()).collect();
    out.push_str(&format!("basis = \"{}\"\n", labels.join(", ")));
    let parity: Vec<String> = spec.basis.iter().map(|b| format!("{}:{}", b.label, b.parity)).collect();
    out.push_str(&format!("parity = \"{}\"\n", parity.join(", ")));
    if spec.basis.iter().all(|b| b.degree.is_some()) && !spec.basis.is_empty() {
        let deg: Vec<String> = spec
            .basis
            .iter()
            .map(|b| format!("{}:{}", b.label, b.degree.unwrap()))
            .collect();
        out.push_str(&format!("degree = \"{}\"\n", deg.join(", ")));
    }
    out.push_str("\n[bracket]\n");
    for b in &spec.brackets {
        out.push_str(&format!(
            "\"{},{}\" = \"{}\"\n",
            b.left,
            b.right,
            format_lincomb(&b.value)
        ));
    }
    if let Some(alpha) = &spec.alpha {
        out.push_str("\n[alpha]\n");
        for (label, comb) in alpha {
            out.push_str(&format!("\"{}\" = \"{}\"\n", label, format_lincomb(comb)));
        }
    }
    if let Some(entries) = form {
        out.push_str("\n[form]\n");
        for e in entries {
            out.push_str(&format!(
                "\"{},{}\" = \"{}\"\n",
                e.left,
                e.right,
                format_scalar(&e.value)
            ));
        }
    }
    out
}

/// Parse and validate in one step.
pub fn parse_algebra(text: &str) -> Result<crate::superalgebra::HomLieSuperalgebra> {
    crate::superalgebra::load_algebra(&parse_spec(text)?.algebra)
}

/// Export an algebra in canonical file form.
pub fn export_algebra(g: &crate::superalgebra::HomLieSuperalgebra) -> String {
    write_spec(&crate::superalgebra::to_spec(g), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{frac, int};

    const AFFINE: &str = r#"
# affine example
[algebra]
name = "affine"
basis = "e1, e2, e3"
parity = "e1:0, e2:0, e3:1"

[bracket]
"e1,e2" = "e1"

[alpha]
"e1" = "e1"
"e2" = "e2"
"e3" = "e3"
"#;

    #[test]
    fn parses_the_affine_file() {
        let f = parse_spec(AFFINE).unwrap();
        assert_eq!(f.algebra.basis.len(), 3);
        assert_eq!(f.algebra.basis[2].parity, Parity::Odd);
        assert_eq!(f.algebra.brackets[0].value, LinComb::label("e1"));
        let g = crate::superalgebra::load_algebra(&f.algebra).unwrap();
        assert_eq!(g, crate::catalog::affine());
    }

    #[test]
    fn empty_bracket_section_gives_abelian() {
        let text = "[algebra]\nbasis = a, b\n[bracket]\n";
        assert!(parse_algebra(text).unwrap().is_abelian());
    }

    #[test]
    fn unknown_label_reports_its_line() {
        let text = AFFINE.replace("\"e1,e2\" = \"e1\"", "\"e1,e9\" = \"e1\"");
        match parse_spec(&text) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!(line, 9);
                assert_eq!(column, 2);
                assert!(message.contains("e9"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_and_duplicate_errors() {
        let dup = "[algebra]\nbasis = a\nbasis = b\n";
        assert!(matches!(parse_spec(dup), Err(Error::Parse { line: 3, .. })));
        let bad = "[algebra]\nbasis = a\n[bracket]\n\"a,a\" = \"2*\"\n";
        assert!(matches!(parse_spec(bad), Err(Error::Parse { line: 4, .. })));
        let loose = "basis = a\n";
        assert!(matches!(parse_spec(loose), Err(Error::Parse { line: 1, .. })));
        let order = "[algebra]\nbasis = a, b\n[bracket]\n\"b,a\" = \"a\"\n";
        assert!(matches!(parse_spec(order), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn linear_combinations() {
        let p = Pos { line: 1, column: 1 };
        let c = parse_lincomb("-e1 + 1/2*e2 - 3*e3", p).unwrap();
        assert_eq!(
            c.0,
            vec![
                (int(-1), "e1".into()),
                (frac(1, 2), "e2".into()),
                (int(-3), "e3".into())
            ]
        );
        assert_eq!(parse_lincomb("0", p).unwrap().0, vec![]);
        assert!(parse_lincomb("2", p).is_err());
        assert!(parse_lincomb("e1 e2", p).is_err());
        assert_eq!(format_lincomb(&c), "-e1 + 1/2*e2 - 3*e3");
    }

    #[test]
    fn export_reparses_identically() {
        for g in crate::catalog::corpus() {
            let text = export_algebra(&g);
            assert_eq!(parse_algebra(&text).unwrap(), g, "{text}");
        }
    }
}
