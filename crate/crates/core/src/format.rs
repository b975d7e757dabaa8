//! Line-oriented text formats for algebras, Hopf-type actions and
//! commutation factors.
//!
//! An algebra file:
//!
//! ```text
//! file      := { blank | '#' comment | header | section }
//! header    := 'field:' field | 'signature:' { name '/' arity }
//!            | 'basis:' { name } | 'preset:' preset-name
//! section   := '[semigroup]' ( 'cyclic' n | 'elements:' {elt} { elt '*' elt '=' elt } )
//!            | '[operations]' { name ['(' basis {',' basis} ')'] '=' vector }
//!            | '[grading]' { elt ':' {basis} | 'degree(' name ')' '=' elt }
//! field     := 'Q' | 'GF(' prime ')'
//! vector    := signed sum of [coefficient '*'] basis, or '0'
//! ```
//!
//! Headers come before sections. Operation entries that are not listed are
//! zero. A `[grading]` section needs a `[semigroup]` section and must put
//! every basis element in exactly one component.

use std::collections::BTreeMap;
use std::path::Path;

use crate::algebra::{Grading, StructuredAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{identity, zero_vector, Matrix};
use crate::presets::{Epsilon, GeneralizedAction};
use crate::scalar::{parse_scalar, Field};
use crate::signature::{Semigroup, Signature};
use crate::structure::describe_vector;
use crate::syntax::{parse_pairs_at, parse_vector_at};

/// Largest semigroup a file may declare.
pub const MAX_SEMIGROUP_ORDER: usize = 256;

/// A parsed algebra file.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraFile {
    pub algebra: StructuredAlgebra,
    /// Preset name as accepted by the command line, e.g. `involution` or
    /// `hopf:action.hopf`.
    pub preset: Option<String>,
}

/// One significant line with its 1-based number and the column where its
/// content starts.
#[derive(Clone, Debug)]
struct Line<'a> {
    number: usize,
    indent: usize,
    text: &'a str,
}

struct Document<'a> {
    source: &'a str,
    headers: Vec<(Line<'a>, &'a str, &'a str)>,
    sections: Vec<(Line<'a>, String, Vec<Line<'a>>)>,
}

fn positioned(source: &str, line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Positioned { file: source.to_string(), line, column, message: message.into() }
}

impl<'a> Line<'a> {
    fn error(&self, source: &str, offset: usize, message: impl Into<String>) -> Error {
        positioned(source, self.number, self.indent + offset + 1, message)
    }

    /// Character offset of `part`, which must be a subslice of the line.
    fn offset_of(&self, part: &str) -> usize {
        let bytes = part.as_ptr() as usize - self.text.as_ptr() as usize;
        self.text[..bytes].chars().count()
    }
}

fn split_document<'a>(text: &'a str, source: &'a str, header_keys: &[&str], section_names: &[&str]) -> Result<Document<'a>> {
    let mut doc = Document { source, headers: Vec::new(), sections: Vec::new() };
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw[..raw.len() - raw.trim_start().len()].chars().count();
        let line = Line { number: i + 1, indent, text: trimmed };
        if let Some(name) = trimmed.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let name = name.trim().to_string();
            if !section_names.contains(&name.as_str()) {
                return Err(line.error(source, 0, format!("unknown section [{name}]")));
            }
            if doc.sections.iter().any(|(_, n, _)| *n == name) {
                return Err(line.error(source, 0, format!("duplicate section [{name}]")));
            }
            doc.sections.push((line, name, Vec::new()));
        } else if let Some((_, _, lines)) = doc.sections.last_mut() {
            lines.push(line);
        } else {
            let Some((key, value)) = trimmed.split_once(':') else {
                return Err(line.error(source, 0, "expected 'key: value' or a [section]"));
            };
            let key = key.trim();
            if !header_keys.contains(&key) {
                return Err(line.error(source, 0, format!("unknown header {key:?}")));
            }
            if doc.headers.iter().any(|(_, k, _)| *k == key) {
                return Err(line.error(source, 0, format!("duplicate header {key:?}")));
            }
            doc.headers.push((line.clone(), key, value.trim()));
        }
    }
    Ok(doc)
}

impl<'a> Document<'a> {
    fn header(&self, key: &str) -> Option<(&Line<'a>, &'a str)> {
        self.headers.iter().find(|(_, k, _)| *k == key).map(|(l, _, v)| (l, *v))
    }

    fn required(&self, key: &str) -> Result<(&Line<'a>, &'a str)> {
        self.header(key).ok_or_else(|| positioned(self.source, 1, 1, format!("missing header '{key}:'")))
    }

    fn section(&self, name: &str) -> Option<(&Line<'a>, &[Line<'a>])> {
        self.sections.iter().find(|(_, n, _)| n == name).map(|(l, _, ls)| (l, ls.as_slice()))
    }

    fn field(&self) -> Result<Field> {
        let (line, value) = self.required("field")?;
        value.parse::<Field>().map_err(|e| line.error(self.source, line.offset_of(value), e.to_string()))
    }

    fn names(&self, key: &str) -> Result<(&Line<'a>, Vec<String>)> {
        let (line, value) = self.required(key)?;
        let names: Vec<String> = value.split_whitespace().map(String::from).collect();
        if names.is_empty() {
            return Err(line.error(self.source, 0, format!("'{key}:' lists nothing")));
        }
        Ok((line, names))
    }
}

fn parse_signature(doc: &Document<'_>) -> Result<Signature> {
    let (line, value) = doc.required("signature")?;
    let mut ops = Vec::new();
    for word in value.split_whitespace() {
        let col = line.offset_of(word);
        let (name, arity) = word
            .split_once('/')
            .ok_or_else(|| line.error(doc.source, col, format!("expected name/arity, found {word:?}")))?;
        let arity: usize =
            arity.parse().map_err(|_| line.error(doc.source, col, format!("bad arity in {word:?}")))?;
        ops.push((name.to_string(), arity));
    }
    Signature::new(ops).map_err(|e| line.error(doc.source, line.offset_of(value), e.to_string()))
}

fn parse_semigroup(doc: &Document<'_>) -> Result<Option<Semigroup>> {
    let Some((head, lines)) = doc.section("semigroup") else {
        return Ok(None);
    };
    let Some(first) = lines.first() else {
        return Err(head.error(doc.source, 0, "empty [semigroup] section"));
    };
    if let Some(n) = first.text.strip_prefix("cyclic") {
        let n: usize = n
            .trim()
            .parse()
            .ok()
            .filter(|&n| (1..=MAX_SEMIGROUP_ORDER).contains(&n))
            .ok_or_else(|| {
                first.error(doc.source, 6, format!("expected an order from 1 to {MAX_SEMIGROUP_ORDER} after 'cyclic'"))
            })?;
        if let Some(extra) = lines.get(1) {
            return Err(extra.error(doc.source, 0, "unexpected line after 'cyclic'"));
        }
        return Ok(Some(Semigroup::cyclic(n)));
    }
    let elements: Vec<String> = first
        .text
        .strip_prefix("elements:")
        .ok_or_else(|| first.error(doc.source, 0, "expected 'cyclic n' or 'elements: ...'"))?
        .split_whitespace()
        .map(String::from)
        .collect();
    let n = elements.len();
    if n > MAX_SEMIGROUP_ORDER {
        return Err(first.error(doc.source, 0, format!("more than {MAX_SEMIGROUP_ORDER} elements")));
    }
    let index = |l: &Line<'_>, w: &str| {
        elements.iter().position(|e| e == w).ok_or_else(|| l.error(doc.source, l.offset_of(w), format!("unknown element {w}")))
    };
    let mut table = vec![vec![None; n]; n];
    for l in &lines[1..] {
        let words: Vec<&str> = l.text.split_whitespace().collect();
        let [a, "*", b, "=", c] = words[..] else {
            return Err(l.error(doc.source, 0, "expected 'a * b = c'"));
        };
        let (a, b, c) = (index(l, a)?, index(l, b)?, index(l, c)?);
        if table[a][b].replace(c).is_some() {
            return Err(l.error(doc.source, 0, "product given twice"));
        }
    }
    let mut full = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            full[a][b] = table[a][b]
                .ok_or_else(|| head.error(doc.source, 0, format!("missing product {} * {}", elements[a], elements[b])))?;
        }
    }
    Semigroup::new(elements, full).map(Some).map_err(|e| head.error(doc.source, 0, e.to_string()))
}

fn parse_operations(doc: &Document<'_>, a: &mut StructuredAlgebra) -> Result<()> {
    let Some((_, lines)) = doc.section("operations") else {
        return Ok(());
    };
    let mut seen = std::collections::HashSet::new();
    for l in lines {
        let Some((lhs, rhs)) = l.text.split_once('=') else {
            return Err(l.error(doc.source, 0, "expected 'op(args) = vector'"));
        };
        let lhs_t = lhs.trim();
        let (name, args) = match lhs_t.split_once('(') {
            Some((name, rest)) => {
                let inner = rest
                    .trim_end()
                    .strip_suffix(')')
                    .ok_or_else(|| l.error(doc.source, l.offset_of(lhs_t), "missing ')'"))?;
                (name.trim(), inner.split(',').map(str::trim).collect::<Vec<_>>())
            }
            None => (lhs_t, Vec::new()),
        };
        let arity = a
            .signature()
            .arity(name)
            .ok_or_else(|| l.error(doc.source, 0, format!("unknown operation {name}")))?;
        let args: Vec<&str> = args.into_iter().filter(|s| !s.is_empty() || arity > 0).collect();
        if args.len() != arity {
            return Err(l.error(doc.source, 0, format!("{name} takes {arity} arguments, got {}", args.len())));
        }
        let mut tuple = Vec::with_capacity(arity);
        for arg in &args {
            let i = a.basis_index(arg).ok_or_else(|| {
                let col = if arg.is_empty() { 0 } else { l.offset_of(arg) };
                l.error(doc.source, col, format!("unknown basis element {arg:?}"))
            })?;
            tuple.push(i);
        }
        if !seen.insert((name.to_string(), tuple.clone())) {
            return Err(l.error(doc.source, 0, format!("{lhs_t} is given twice")));
        }
        let v = parse_vector_at(rhs, a.field(), a.basis(), doc.source, l.number, l.indent + l.offset_of(rhs))?;
        a.set(name, &tuple, v).map_err(|e| l.error(doc.source, 0, e.to_string()))?;
    }
    Ok(())
}

fn parse_grading(doc: &Document<'_>, a: &StructuredAlgebra, group: Option<Semigroup>) -> Result<Option<Grading>> {
    let Some((head, lines)) = doc.section("grading") else {
        return Ok(None);
    };
    let group = group.ok_or_else(|| head.error(doc.source, 0, "[grading] needs a [semigroup] section"))?;
    let mut assignment = vec![None; a.dim()];
    let mut zeroary = BTreeMap::new();
    let element = |l: &Line<'_>, w: &str| {
        group.index_of(w).ok_or_else(|| l.error(doc.source, l.offset_of(w), format!("{w} is not a semigroup element")))
    };
    for l in lines {
        if let Some(rest) = l.text.strip_prefix("degree(") {
            let (name, g) = rest
                .split_once(')')
                .and_then(|(n, r)| Some((n.trim(), r.trim().strip_prefix('=')?.trim())))
                .ok_or_else(|| l.error(doc.source, 0, "expected 'degree(op) = element'"))?;
            if a.signature().arity(name) != Some(0) {
                return Err(l.error(doc.source, 7, format!("{name} is not a constant of the signature")));
            }
            zeroary.insert(name.to_string(), element(l, g)?);
            continue;
        }
        let Some((g, members)) = l.text.split_once(':') else {
            return Err(l.error(doc.source, 0, "expected 'element: basis ...'"));
        };
        let g = element(l, g.trim())?;
        for b in members.split_whitespace() {
            let i = a
                .basis_index(b)
                .ok_or_else(|| l.error(doc.source, l.offset_of(b), format!("unknown basis element {b}")))?;
            if assignment[i].replace(g).is_some() {
                return Err(l.error(doc.source, l.offset_of(b), format!("{b} is graded twice")));
            }
        }
    }
    let missing: Vec<&str> =
        a.basis().iter().zip(&assignment).filter(|(_, g)| g.is_none()).map(|(b, _)| b.as_str()).collect();
    if !missing.is_empty() {
        return Err(head.error(doc.source, 0, format!("no degree for {}", missing.join(", "))));
    }
    let mut gr = Grading::new(group, assignment.into_iter().flatten().collect());
    gr.zeroary_degrees = zeroary;
    Ok(Some(gr))
}

pub fn parse_algebra(text: &str, source: &str) -> Result<AlgebraFile> {
    let doc = split_document(
        text,
        source,
        &["field", "signature", "basis", "preset"],
        &["semigroup", "operations", "grading"],
    )?;
    let field = doc.field()?;
    let signature = parse_signature(&doc)?;
    let (basis_line, basis) = doc.names("basis")?;
    let mut a = StructuredAlgebra::new(field, basis, signature).map_err(|e| basis_line.error(source, 0, e.to_string()))?;
    let group = parse_semigroup(&doc)?;
    parse_operations(&doc, &mut a)?;
    if let Some(gr) = parse_grading(&doc, &a, group)? {
        let head = doc.section("grading").map(|(l, _)| l.clone()).expect("grading section");
        a = a.attach_grading(gr).map_err(|r| head.error(source, 0, format!("grading is not compatible: {r}")))?;
    }
    let preset = doc.header("preset").map(|(_, v)| v.to_string());
    Ok(AlgebraFile { algebra: a, preset })
}

pub fn read_algebra(path: &Path) -> Result<AlgebraFile> {
    let text = read_text(path)?;
    parse_algebra(&text, &path.display().to_string())
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: format!("cannot read file: {e}") })
}

pub fn serialize_algebra(file: &AlgebraFile) -> String {
    let a = &file.algebra;
    let mut out = String::new();
    out.push_str(&format!("field: {}\n", a.field()));
    let ops: Vec<String> = a.signature().ops().iter().map(|o| format!("{}/{}", o.name, o.arity)).collect();
    out.push_str(&format!("signature: {}\n", ops.join(" ")));
    out.push_str(&format!("basis: {}\n", a.basis().join(" ")));
    if let Some(p) = &file.preset {
        out.push_str(&format!("preset: {p}\n"));
    }
    if let Some(gr) = a.grading() {
        out.push_str("\n[semigroup]\n");
        let g = &gr.group;
        if *g == Semigroup::cyclic(g.len()) {
            out.push_str(&format!("cyclic {}\n", g.len()));
        } else {
            out.push_str(&format!("elements: {}\n", g.elements().join(" ")));
            for x in 0..g.len() {
                for y in 0..g.len() {
                    out.push_str(&format!("{} * {} = {}\n", g.name(x), g.name(y), g.name(g.mul(x, y))));
                }
            }
        }
    }
    out.push_str("\n[operations]\n");
    for op in a.signature().ops() {
        let t = a.tensor(&op.name).expect("tensor for every operation");
        for (tuple, v) in t.entries() {
            if op.arity == 0 {
                out.push_str(&op.name);
            } else {
                let args: Vec<&str> = tuple.iter().map(|&i| a.basis()[i].as_str()).collect();
                out.push_str(&format!("{}({})", op.name, args.join(",")));
            }
            out.push_str(&format!(" = {}\n", describe_vector(a, v)));
        }
    }
    if let Some(gr) = a.grading() {
        out.push_str("\n[grading]\n");
        for g in 0..gr.group.len() {
            let members: Vec<&str> = gr.component(g).into_iter().map(|i| a.basis()[i].as_str()).collect();
            if !members.is_empty() {
                out.push_str(&format!("{}: {}\n", gr.group.name(g), members.join(" ")));
            }
        }
        for (name, g) in &gr.zeroary_degrees {
            out.push_str(&format!("degree({name}) = {}\n", gr.group.name(*g)));
        }
    }
    out
}

/// Parses an action file against the module algebra it acts on.
///
/// ```text
/// field: Q
/// basis: one s
/// unit: one
/// [product]      s * s = one        (unlisted products are zero)
/// [delta1]       s = (s,s)          (unlisted elements map to zero)
/// [delta2]       s = (s,s)
/// [action]       s(e12) = -e12      (unlisted images are zero; the unit acts as the identity)
/// ```
pub fn parse_action(text: &str, source: &str, module: &StructuredAlgebra) -> Result<GeneralizedAction> {
    let doc = split_document(text, source, &["field", "basis", "unit"], &["product", "delta1", "delta2", "action"])?;
    let field = doc.field()?;
    if field != module.field() {
        let (l, v) = doc.required("field")?;
        return Err(l.error(source, l.offset_of(v), format!("field {field} differs from the algebra's {}", module.field())));
    }
    let (_, hbasis) = doc.names("basis")?;
    let h = hbasis.len();
    let (unit_line, unit_name) = doc.required("unit")?;
    let unit = hbasis
        .iter()
        .position(|b| b == unit_name)
        .ok_or_else(|| unit_line.error(source, unit_line.offset_of(unit_name), format!("{unit_name} is not in the basis")))?;
    let hindex = |l: &Line<'_>, w: &str| {
        hbasis.iter().position(|b| b == w).ok_or_else(|| l.error(source, l.offset_of(w), format!("unknown element {w}")))
    };

    let mut hmul = vec![vec![zero_vector(field, h); h]; h];
    for l in doc.section("product").map(|s| s.1).unwrap_or(&[]) {
        let (lhs, rhs) = l.text.split_once('=').ok_or_else(|| l.error(source, 0, "expected 'a * b = vector'"))?;
        let (x, y) = lhs.split_once('*').ok_or_else(|| l.error(source, 0, "expected 'a * b = vector'"))?;
        let (x, y) = (hindex(l, x.trim())?, hindex(l, y.trim())?);
        hmul[x][y] = parse_vector_at(rhs, field, &hbasis, source, l.number, l.indent + l.offset_of(rhs))?;
    }

    let coproduct = |name: &str| -> Result<Vec<Vec<(usize, usize, crate::scalar::Scalar)>>> {
        let mut out = vec![Vec::new(); h];
        for l in doc.section(name).map(|s| s.1).unwrap_or(&[]) {
            let (lhs, rhs) = l.text.split_once('=').ok_or_else(|| l.error(source, 0, "expected 'b = (x,y) + ...'"))?;
            let b = hindex(l, lhs.trim())?;
            out[b] = parse_pairs_at(rhs, field, &hbasis, source, l.number, l.indent + l.offset_of(rhs))?;
        }
        Ok(out)
    };
    let delta1 = coproduct("delta1")?;
    let delta2 = coproduct("delta2")?;

    let n = module.dim();
    let mut action: Vec<Matrix> = vec![vec![zero_vector(field, n); n]; h];
    action[unit] = identity(field, n);
    for l in doc.section("action").map(|s| s.1).unwrap_or(&[]) {
        let parsed = l
            .text
            .split_once('=')
            .and_then(|(lhs, rhs)| {
                let (b, arg) = lhs.trim().strip_suffix(')')?.split_once('(')?;
                Some((b.trim(), arg.trim(), rhs))
            })
            .ok_or_else(|| l.error(source, 0, "expected 'b(basis) = vector'"))?;
        let (b, arg, rhs) = parsed;
        let b = hindex(l, b)?;
        let j = module
            .basis_index(arg)
            .ok_or_else(|| l.error(source, l.offset_of(arg), format!("unknown basis element {arg}")))?;
        let image = parse_vector_at(rhs, field, module.basis(), source, l.number, l.indent + l.offset_of(rhs))?;
        for (i, c) in image.into_iter().enumerate() {
            action[b][i][j] = c;
        }
    }
    let g = GeneralizedAction { field, hbasis, unit, hmul, delta1, delta2, action };
    g.validate().map_err(|e| positioned(source, 1, 1, e.to_string()))?;
    Ok(g)
}

/// Parses a commutation-factor file for a graded algebra.
///
/// ```text
/// bracket: br
/// [epsilon]
/// 1 1 = -1          (unlisted pairs are 1)
/// ```
pub fn parse_epsilon(text: &str, source: &str, group: &Semigroup, field: Field) -> Result<(String, Epsilon)> {
    let doc = split_document(text, source, &["bracket"], &["epsilon"])?;
    let (bl, bracket) = doc.required("bracket")?;
    if bracket.is_empty() {
        return Err(bl.error(source, 0, "empty bracket name"));
    }
    let n = group.len();
    let mut table = vec![vec![field.one(); n]; n];
    for l in doc.section("epsilon").map(|s| s.1).unwrap_or(&[]) {
        let (lhs, rhs) = l.text.split_once('=').ok_or_else(|| l.error(source, 0, "expected 'g h = value'"))?;
        let words: Vec<&str> = lhs.split_whitespace().collect();
        let [g, k] = words[..] else {
            return Err(l.error(source, 0, "expected two elements before '='"));
        };
        let idx = |w: &str| {
            group.index_of(w).ok_or_else(|| l.error(source, l.offset_of(w), format!("{w} is not a grading element")))
        };
        let (g, k) = (idx(g)?, idx(k)?);
        table[g][k] = parse_scalar(rhs, field).map_err(|e| l.error(source, l.offset_of(rhs), e.to_string()))?;
    }
    let eps = Epsilon { table };
    eps.validate(group).map_err(|e| positioned(source, 1, 1, e.to_string()))?;
    Ok((bracket.to_string(), eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{grouplike_action, transpose_action};
    use crate::samples::{matrix, pauli_m2};

    #[test]
    fn round_trip_of_graded_matrix_algebra() {
        let a = pauli_m2(Field::prime(7).unwrap());
        let file = AlgebraFile { algebra: a.clone(), preset: None };
        let text = serialize_algebra(&file);
        assert!(text.contains("mul(e12,e21) = e11"));
        let back = parse_algebra(&text, "m.alg").unwrap();
        assert_eq!(back, file);
        assert_eq!(serialize_algebra(&back), text);
    }

    #[test]
    fn explicit_semigroup_and_constants() {
        let text = "field: Q\nsignature: mul/2 one/0\nbasis: u v\n\n[semigroup]\nelements: e a\ne * e = e\ne * a = a\na * e = a\na * a = a\n\n[operations]\nmul(u,u) = u\nmul(u,v) = v\nmul(v,u) = v\none = u\n\n[grading]\ne: u\na: v\ndegree(one) = e\n";
        let f = parse_algebra(text, "s.alg").unwrap();
        assert_eq!(serialize_algebra(&f), text);
    }

    #[test]
    fn positioned_errors() {
        let err = |t: &str| parse_algebra(t, "f.alg").unwrap_err().to_string();
        assert_eq!(err("field: GF(6)\n"), "f.alg:1:8: invalid field: GF(6) needs a prime modulus below 2^31");
        assert!(err("field: Q\nsignature: mul/2\nbasis: a b\n[operations]\nmul(a,c) = a\n").starts_with("f.alg:5:7:"));
        assert!(err("field: Q\nsignature: mul/2\nbasis: a b\n[operations]\n  mul(a,a) = a + 2 b\n").starts_with("f.alg:5:"));
        let not_graded = "field: Q\nsignature: mul/2\nbasis: a b\n[semigroup]\ncyclic 2\n[operations]\nmul(b,b) = b\n[grading]\n0: a\n1: b\n";
        assert!(err(not_graded).starts_with("f.alg:8:1: grading is not compatible"));
        let not_assoc = "field: Q\nsignature: mul/2\nbasis: a\n[semigroup]\nelements: p q\np * p = q\np * q = p\nq * p = p\nq * q = p\n";
        assert!(err(not_assoc).contains("not associative"));
        assert!(err("field: Q\nbasis: a\n").contains("missing header 'signature:'"));
    }

    #[test]
    fn action_and_epsilon_files() {
        let f = Field::Rationals;
        let m2 = matrix(2, f);
        let text = "field: Q\nbasis: one s\nunit: one\n[product]\none * one = one\none * s = s\ns * one = s\ns * s = one\n[delta1]\none = (one,one)\ns = (s,s)\n[action]\ns(e12) = -e12\ns(e21) = -e21\ns(e11) = e11\ns(e22) = e22\n";
        assert_eq!(parse_action(text, "g.hopf", &m2).unwrap(), grouplike_action(f));
        let text = "field: Q\nbasis: one s\nunit: one\n[product]\none * one = one\none * s = s\ns * one = s\ns * s = one\n[delta1]\none = (one,one)\n[delta2]\ns = (s,s)\n[action]\ns(e11) = e11\ns(e12) = e21\ns(e21) = e12\ns(e22) = e22\n";
        assert_eq!(parse_action(text, "t.gen", &m2).unwrap(), transpose_action(f));
        let bad = "field: Q\nbasis: one s\nunit: one\n[product]\none * one = one\n";
        assert!(parse_action(bad, "b.hopf", &m2).is_err());

        let z2 = Semigroup::cyclic(2);
        let (br, eps) = parse_epsilon("bracket: br\n[epsilon]\n1 1 = -1\n", "e.eps", &z2, f).unwrap();
        assert_eq!((br.as_str(), eps), ("br", Epsilon::super_sign(f)));
        assert!(parse_epsilon("bracket: br\n[epsilon]\n0 1 = -1\n", "e.eps", &z2, f).is_err());
    }
}
