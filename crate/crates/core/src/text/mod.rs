//! Text formats: the polynomial grammar, series, derivation, group-law and
//! variety files, and `key=value` output records.
//!
//! Every file format is line based. Blank lines and lines starting with `#`
//! are ignored.

mod poly;
mod record;

pub use poly::parse_poly;
pub use record::Record;

use std::collections::BTreeMap;

use poly::parse_poly_at;

use crate::algebra::gf::{Fe, Gf};
use crate::algebra::poly::{Monomial, MultiPoly, PolyRing};
use crate::algebra::ratfunc::{RatFunc, RatFuncField};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};
use crate::formal_group::FormalGroupLaw;
use crate::hs::HSDerivation;
use crate::prolongation::AffineVariety;
use crate::trunc::{pack, unpack, TruncRing, TruncSeries};

/// An element of `k` written `num` or `num / den` in the polynomial grammar.
pub fn parse_ratfunc(k: &RatFuncField, src: &str) -> Result<RatFunc> {
    let Some((num, den)) = src.split_once('/') else {
        return Ok(k.from_poly(parse_poly(k.poly_ring(), src)?));
    };
    let n = parse_poly(k.poly_ring(), num)?;
    let offset = num.chars().count() + 1;
    let d = parse_poly(k.poly_ring(), den).map_err(|e| match e {
        Error::Parse { line, col, msg } => Error::parse(line, col + offset, msg),
        other => other,
    })?;
    k.frac(n, d).ok_or_else(|| Error::parse(1, offset + 1, "zero denominator"))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// `key=value` pairs of a header line.
pub fn parse_header(line: usize, src: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for tok in src.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| Error::parse(line, 1, format!("expected key=value, found {tok}")))?;
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::parse(line, 1, format!("duplicate key {k}")));
        }
    }
    Ok(out)
}

fn header_num<T: std::str::FromStr>(h: &BTreeMap<String, String>, line: usize, key: &str, default: Option<T>) -> Result<T> {
    match h.get(key) {
        Some(v) => v.parse().map_err(|_| Error::parse(line, 1, format!("bad value for {key}: {v}"))),
        None => default.ok_or_else(|| Error::parse(line, 1, format!("missing key {key}"))),
    }
}

fn header_field(h: &BTreeMap<String, String>, line: usize) -> Result<Gf> {
    let p: u64 = header_num(h, line, "p", None)?;
    let n: u32 = header_num(h, line, "n", Some(1))?;
    Gf::new(p, n).map_err(|e| Error::parse(line, 1, e))
}

fn field_header(f: &Gf) -> String {
    format!("p={} n={}", f.p(), f.degree())
}

fn check_names(line: usize, names: &[String]) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        let ok = n.bytes().next().is_some_and(|b| b.is_ascii_alphabetic() || b == b'_')
            && n.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_');
        if !ok {
            return Err(Error::parse(line, 1, format!("invalid name {n:?}")));
        }
        if names[..i].contains(n) {
            return Err(Error::parse(line, 1, format!("duplicate name {n}")));
        }
    }
    Ok(())
}

fn series_from_poly(ring: &TruncRing<Gf>, line: usize, f: &MultiPoly<Fe>) -> Result<TruncSeries<Fe>> {
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        if m.0.iter().any(|&x| x >= ring.bound()) {
            return Err(Error::parse(line, 1, format!("exponent outside the truncation bound {}", ring.bound())));
        }
        terms.push((pack(&m.0), *c));
    }
    Ok(ring.from_keys(terms))
}

fn series_poly_ring<R: Ring>(ring: &TruncRing<R>) -> PolyRing<R> {
    PolyRing::new(ring.coeff_ring().clone(), ring.names().to_vec())
}

/// A series file: header `p=.. n=.. m=.. e=..` then one series line in `v1..ve`.
pub fn parse_series(text: &str) -> Result<(TruncRing<Gf>, TruncSeries<Fe>)> {
    let mut lines = content_lines(text);
    let (hl, h) = lines.next().ok_or_else(|| Error::parse(1, 1, "missing header"))?;
    let hdr = parse_header(hl, h)?;
    let field = header_field(&hdr, hl)?;
    let m: u32 = header_num(&hdr, hl, "m", None)?;
    let e: usize = header_num(&hdr, hl, "e", None)?;
    if m == 0 || e == 0 {
        return Err(Error::parse(hl, 1, "m and e must be positive"));
    }
    let ring = TruncRing::new(field, m, e).map_err(|err| Error::parse(hl, 1, err))?;
    let (sl, s) = lines.next().ok_or_else(|| Error::parse(hl + 1, 1, "missing series"))?;
    if let Some((l, _)) = lines.next() {
        return Err(Error::parse(l, 1, "trailing content"));
    }
    let f = parse_poly_at(&series_poly_ring(&ring), s, sl)?;
    let series = series_from_poly(&ring, sl, &f)?;
    Ok((ring, series))
}

pub fn fmt_series(ring: &TruncRing<Gf>, s: &TruncSeries<Fe>) -> String {
    let pr = series_poly_ring(ring);
    let f = pr.from_terms(s.terms().map(|(k, c)| (Monomial(unpack(k, ring.arity())), *c)));
    format!(
        "{} m={} e={}\n{}\n",
        field_header(ring.coeff_ring()),
        ring.level().expect("series files carry a level"),
        ring.arity(),
        pr.fmt_poly(&f)
    )
}

/// A derivation file on `F_q[gens]`.
///
/// ```text
/// context p=2 n=1 m=1 e=1 gens=t
/// gen t -> t + v1
/// ```
pub fn parse_derivation(text: &str) -> Result<HSDerivation<PolyRing<Gf>>> {
    let mut lines = content_lines(text);
    let (hl, h) = lines.next().ok_or_else(|| Error::parse(1, 1, "missing context line"))?;
    let rest = h.strip_prefix("context").ok_or_else(|| Error::parse(hl, 1, "expected 'context'"))?;
    let hdr = parse_header(hl, rest)?;
    let field = header_field(&hdr, hl)?;
    let m: u32 = header_num(&hdr, hl, "m", None)?;
    let e: usize = header_num(&hdr, hl, "e", None)?;
    if m == 0 || e == 0 {
        return Err(Error::parse(hl, 1, "m and e must be positive"));
    }
    let gens: Vec<String> = hdr.get("gens").map(|g| g.split(',').map(String::from).collect()).unwrap_or_default();
    check_names(hl, &gens)?;
    let ring = PolyRing::new(field.clone(), gens.clone());
    let target = TruncRing::new(ring.clone(), m, e).map_err(|err| Error::parse(hl, 1, err))?;
    let mut all = gens.clone();
    all.extend(target.names().iter().cloned());
    check_names(hl, &all)?;
    let flat = PolyRing::new(field, all);
    let mut images: Vec<Option<TruncSeries<MultiPoly<Fe>>>> = vec![None; gens.len()];
    for (l, s) in lines {
        let rest = s.strip_prefix("gen").filter(|r| r.starts_with(char::is_whitespace)).ok_or_else(|| Error::parse(l, 1, "expected 'gen'"))?;
        let (name, image) = rest.split_once("->").ok_or_else(|| Error::parse(l, 1, "expected '->'"))?;
        let name = name.trim();
        let g = gens.iter().position(|x| x == name).ok_or_else(|| Error::parse(l, 1, format!("unknown generator {name}")))?;
        if images[g].is_some() {
            return Err(Error::parse(l, 1, format!("generator {name} given twice")));
        }
        let col = s.len() - image.len();
        let f = parse_poly_at(&flat, image, l).map_err(|err| match err {
            Error::Parse { line, col: c, msg } => Error::Parse { line, col: c + col, msg },
            other => other,
        })?;
        let k = gens.len();
        let mut by_key: BTreeMap<u128, Vec<(Monomial, Fe)>> = BTreeMap::new();
        for (mono, c) in f.terms() {
            let v = &mono.0[k..];
            if v.iter().any(|&x| x >= target.bound()) {
                return Err(Error::parse(l, 1, format!("exponent outside the truncation bound {}", target.bound())));
            }
            by_key.entry(pack(v)).or_default().push((Monomial(mono.0[..k].to_vec()), *c));
        }
        images[g] = Some(target.from_keys(by_key.into_iter().map(|(key, ts)| (key, ring.from_terms(ts)))));
    }
    let images = images
        .into_iter()
        .zip(&gens)
        .map(|(im, n)| im.ok_or_else(|| Error::parse(hl, 1, format!("no image for generator {n}"))))
        .collect::<Result<Vec<_>>>()?;
    HSDerivation::with_target(ring, target, images)
}

pub fn fmt_derivation(d: &HSDerivation<PolyRing<Gf>>) -> String {
    let ring = d.ring();
    let gens = ring.names();
    let mut all = gens.to_vec();
    all.extend(d.target().names().iter().cloned());
    let flat = PolyRing::new(ring.base().clone(), all);
    let mut out = format!("context {} m={} e={} gens={}\n", field_header(ring.base()), d.level(), d.dim(), gens.join(","));
    for (name, im) in gens.iter().zip(d.images()) {
        let mut terms = Vec::new();
        for (k, c) in im.terms() {
            let v = unpack(k, d.dim());
            for (mono, x) in c.terms() {
                let mut e = mono.0.clone();
                e.extend(&v);
                terms.push((Monomial(e), *x));
            }
        }
        out.push_str(&format!("gen {name} -> {}\n", flat.fmt_poly(&flat.from_terms(terms))));
    }
    out
}

/// A group-law file: `law name=.. p=.. n=.. e=..` then `F<a> = ...` in `X1..Xe, Y1..Ye`.
pub fn parse_group_law(text: &str) -> Result<FormalGroupLaw> {
    let mut lines = content_lines(text);
    let (hl, h) = lines.next().ok_or_else(|| Error::parse(1, 1, "missing law line"))?;
    let rest = h.strip_prefix("law").ok_or_else(|| Error::parse(hl, 1, "expected 'law'"))?;
    let hdr = parse_header(hl, rest)?;
    let field = header_field(&hdr, hl)?;
    let e: usize = header_num(&hdr, hl, "e", None)?;
    if e == 0 || 2 * e > crate::trunc::MAX_ARITY {
        return Err(Error::parse(hl, 1, "dimension out of range"));
    }
    let name = hdr.get("name").cloned().unwrap_or_else(|| "custom".into());
    let names: Vec<String> = (1..=e).map(|i| format!("X{i}")).chain((1..=e).map(|i| format!("Y{i}"))).collect();
    let ring = PolyRing::new(field.clone(), names);
    let mut series = vec![None; e];
    for (l, s) in lines {
        let (lhs, rhs) = s.split_once('=').ok_or_else(|| Error::parse(l, 1, "expected 'F<a> = ...'"))?;
        let a: usize = lhs.trim().strip_prefix('F').and_then(|x| x.parse().ok()).filter(|&a| (1..=e).contains(&a)).ok_or_else(|| {
            Error::parse(l, 1, format!("bad component {}", lhs.trim()))
        })?;
        if series[a - 1].is_some() {
            return Err(Error::parse(l, 1, format!("component F{a} given twice")));
        }
        series[a - 1] = Some(parse_poly_at(&ring, rhs, l)?);
    }
    let series = series
        .into_iter()
        .enumerate()
        .map(|(a, s)| s.ok_or_else(|| Error::parse(hl, 1, format!("missing component F{}", a + 1))))
        .collect::<Result<Vec<_>>>()?;
    FormalGroupLaw::new(name, &field, e, series)
}

pub fn fmt_group_law(law: &FormalGroupLaw) -> String {
    let mut out = format!("law name={} {} e={}\n", law.name(), field_header(law.field()), law.dim());
    for (a, s) in law.fmt_law().iter().enumerate() {
        out.push_str(&format!("F{} = {s}\n", a + 1));
    }
    out
}

/// A variety file over `k`: a `vars ...` header then one generator per line.
///
/// Coefficients are polynomials in the generators of `k`.
pub fn parse_variety(k: &RatFuncField, text: &str) -> Result<AffineVariety> {
    let mut lines = content_lines(text);
    let (hl, h) = lines.next().ok_or_else(|| Error::parse(1, 1, "missing vars line"))?;
    let rest = h.strip_prefix("vars").filter(|r| r.is_empty() || r.starts_with(char::is_whitespace)).ok_or_else(|| {
        Error::parse(hl, 1, "expected 'vars'")
    })?;
    let vars: Vec<String> = rest.split_whitespace().map(String::from).collect();
    if vars.is_empty() {
        return Err(Error::parse(hl, 1, "no variables"));
    }
    let mut all = vars.clone();
    all.extend(k.poly_ring().names().iter().cloned());
    check_names(hl, &all)?;
    let flat = PolyRing::new(k.base_field().clone(), all).with_order(k.poly_ring().order());
    let ring = PolyRing::new(k.clone(), vars.clone());
    let mut gens = Vec::new();
    for (l, s) in lines {
        let f = parse_poly_at(&flat, s, l)?;
        let n = vars.len();
        let mut by_mono: BTreeMap<Monomial, Vec<(Monomial, Fe)>> = BTreeMap::new();
        for (mono, c) in f.terms() {
            by_mono.entry(Monomial(mono.0[..n].to_vec())).or_default().push((Monomial(mono.0[n..].to_vec()), *c));
        }
        gens.push(ring.from_terms(by_mono.into_iter().map(|(m, ts)| (m, k.from_poly(k.poly_ring().from_terms(ts))))));
    }
    Ok(AffineVariety::new(ring, gens))
}

/// Fails if a coefficient has a nontrivial denominator.
pub fn fmt_variety(v: &AffineVariety) -> Result<String> {
    let k = v.ring.base();
    let kp = k.poly_ring();
    let mut all = v.ring.names().to_vec();
    all.extend(kp.names().iter().cloned());
    let flat = PolyRing::new(k.base_field().clone(), all).with_order(kp.order());
    let mut out = format!("vars {}\n", v.ring.names().join(" "));
    for g in &v.gens {
        let mut terms = Vec::new();
        for (m, c) in g.terms() {
            let cp = k.as_poly(c).ok_or_else(|| Error::Unsupported(format!("coefficient {} is not a polynomial", k.fmt_elem(c))))?;
            for (cm, x) in cp.terms() {
                let mut e = m.0.clone();
                e.extend(&cm.0);
                terms.push((Monomial(e), *x));
            }
        }
        out.push_str(&flat.fmt_poly(&flat.from_terms(terms)));
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
