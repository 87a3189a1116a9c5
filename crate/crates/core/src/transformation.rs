//! Self-maps of a finite set `{0, .., n-1}`.
//!
//! A [`Transformation`] stores its image table: position `x` holds `f(x)`.
//! Points are 0-based internally. The two textual notations, letters
//! (`(a,a,c)`) and 1-based numerals (`(1,1,4,4)`), exist only at the
//! parse/format boundary.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default and configurable resource caps shared by the enumeration routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest arity accepted by exhaustive routines.
    pub max_arity: usize,
    /// Largest set a closure computation may grow to.
    pub closure_limit: usize,
    /// Generator-subset size used when enumerating subgroups of an H-class.
    pub max_generators: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_arity: 8,
            closure_limit: 10_000,
            max_generators: 2,
        }
    }
}

impl Limits {
    /// Rejects arity 0 and arities above `max_arity`.
    pub fn check_arity(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Domain("arity must be positive".into()));
        }
        if n > self.max_arity {
            return Err(Error::ResourceLimit {
                what: "arity",
                limit: self.max_arity,
            });
        }
        Ok(())
    }
}

/// Text notation for points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Style {
    /// `a, b, c, ...`; only available up to 26 points.
    Letter,
    /// `1, 2, 3, ...`
    Numeric,
}

impl Style {
    /// Renders a 0-based point. Letters fall back to numerals past `z`.
    pub fn point(self, x: usize) -> String {
        match self {
            Style::Letter if x < 26 => char::from(b'a' + x as u8).to_string(),
            _ => (x + 1).to_string(),
        }
    }

    /// Letter style when every point has a letter, numeric otherwise.
    pub fn effective(self, arity: usize) -> Style {
        if self == Style::Letter && arity > 26 {
            Style::Numeric
        } else {
            self
        }
    }
}

impl FromStr for Style {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "letter" | "letters" => Ok(Style::Letter),
            "numeric" | "number" => Ok(Style::Numeric),
            _ => Err(Error::parse(0, format!("unknown style `{s}`"))),
        }
    }
}

/// A subset of `{0, .., arity-1}`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    arity: usize,
    members: Vec<usize>,
}

impl PointSet {
    pub fn empty(arity: usize) -> Self {
        PointSet {
            arity,
            members: Vec::new(),
        }
    }

    pub fn full(arity: usize) -> Self {
        PointSet {
            arity,
            members: (0..arity).collect(),
        }
    }

    /// Builds a set from arbitrary members, rejecting points outside the arity.
    pub fn new(arity: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= arity) {
            return Err(Error::PointOutOfRange { point: bad, arity });
        }
        Ok(PointSet {
            arity,
            members: set.into_iter().collect(),
        })
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        PointSet {
            arity: mask.len(),
            members: mask
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn complement(&self) -> PointSet {
        PointSet {
            arity: self.arity,
            members: (0..self.arity).filter(|&x| !self.contains(x)).collect(),
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let set: BTreeSet<usize> = self.iter().chain(other.iter()).collect();
        PointSet {
            arity: self.arity.max(other.arity),
            members: set.into_iter().collect(),
        }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    /// Membership mask of length `n`; members at or beyond `n` are dropped.
    pub(crate) fn mask_for(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for x in self.iter().filter(|&x| x < n) {
            mask[x] = true;
        }
        mask
    }

    /// Renders the set as `{a,c}` or `{1,3}`.
    pub fn format(&self, style: Style) -> String {
        let style = style.effective(self.arity);
        let parts: Vec<String> = self.iter().map(|x| style.point(x)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// 1-based members, the persisted form.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.iter().map(|x| x + 1).collect()
    }
}

/// The partition of the domain into preimage classes of a map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelPartition {
    arity: usize,
    blocks: Vec<Vec<usize>>,
}

impl KernelPartition {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Blocks sorted internally and ordered by their least element.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn format(&self, style: Style) -> String {
        let style = style.effective(self.arity);
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|&x| style.point(x)).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A self-map of `{0, .., n-1}` stored as its image table.
///
/// Ordering is lexicographic on the image table, which is the canonical order
/// used for every enumeration and report.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Vec<u8>,
}

impl Transformation {
    /// Builds a transformation from 0-based images; every entry must be below the length.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::Domain("arity must be positive".into()));
        }
        if n > u8::MAX as usize {
            return Err(Error::ResourceLimit {
                what: "arity",
                limit: u8::MAX as usize,
            });
        }
        if let Some(&bad) = images.iter().find(|&&v| v >= n) {
            return Err(Error::PointOutOfRange {
                point: bad,
                arity: n,
            });
        }
        Ok(Transformation {
            images: images.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize, "arity out of range");
        Transformation {
            images: (0..n as u8).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    /// `f(x)`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&v| v as usize)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: other.arity(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Transformation) -> Transformation {
        Transformation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn is_idempotent(&self) -> bool {
        self.images
            .iter()
            .all(|&v| self.images[v as usize] == v)
    }

    pub fn fixed_points(&self) -> PointSet {
        PointSet {
            arity: self.arity(),
            members: (0..self.arity()).filter(|&x| self.apply(x) == x).collect(),
        }
    }

    pub fn fixed_point_count(&self) -> usize {
        (0..self.arity()).filter(|&x| self.apply(x) == x).count()
    }

    pub fn moved_points(&self) -> PointSet {
        self.fixed_points().complement()
    }

    pub fn image(&self) -> PointSet {
        let mut mask = vec![false; self.arity()];
        for v in self.images() {
            mask[v] = true;
        }
        PointSet::from_mask(&mask)
    }

    pub fn kernel(&self) -> KernelPartition {
        let n = self.arity();
        let mut by_value: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            by_value[self.apply(x)].push(x);
        }
        let mut blocks: Vec<Vec<usize>> = by_value.into_iter().filter(|b| !b.is_empty()).collect();
        blocks.sort();
        KernelPartition { arity: n, blocks }
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.arity()
    }

    /// Renders the image table, e.g. `(a,a,c)` or `(1,1,3,3)`.
    pub fn format(&self, style: Style) -> String {
        let style = style.effective(self.arity());
        let parts: Vec<String> = self.images().map(|v| style.point(v)).collect();
        format!("({})", parts.join(","))
    }

    /// Parses a tuple and checks it has exactly `arity` entries.
    pub fn parse_with_arity(text: &str, arity: usize) -> Result<Self> {
        let f = parse_tuple(text, 0)?;
        if f.arity() != arity {
            return Err(Error::parse(
                0,
                format!("expected {arity} entries, found {}", f.arity()),
            ));
        }
        Ok(f)
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(Style::Numeric))
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(Style::Numeric))
    }
}

impl FromStr for Transformation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_tuple(s, 0)
    }
}

impl Serialize for Transformation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.format(Style::Numeric))
    }
}

impl<'de> Deserialize<'de> for Transformation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TokenKind {
    Letter,
    Number,
}

/// Parses one parenthesized tuple. `base` offsets reported positions.
fn parse_tuple(text: &str, base: usize) -> Result<Transformation> {
    let trimmed_start = text.len() - text.trim_start().len();
    let body = text.trim();
    if !body.starts_with('(') {
        return Err(Error::parse(base + trimmed_start, "expected `(`"));
    }
    if !body.ends_with(')') || body.len() < 2 {
        return Err(Error::parse(base + trimmed_start + body.len(), "expected `)`"));
    }
    let inner = &body[1..body.len() - 1];
    let inner_base = base + trimmed_start + 1;

    let mut kind: Option<TokenKind> = None;
    let mut values = Vec::new();
    let mut offset = 0;
    for piece in inner.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let tok = piece.trim();
        let pos = inner_base + offset + lead;
        offset += piece.len() + 1;
        if tok.is_empty() {
            return Err(Error::parse(pos, "empty entry"));
        }
        let (this_kind, value) = if tok.chars().all(|c| c.is_ascii_lowercase()) && tok.len() == 1 {
            (TokenKind::Letter, (tok.as_bytes()[0] - b'a') as usize)
        } else if tok.chars().all(|c| c.is_ascii_digit()) {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::parse(pos, format!("bad number `{tok}`")))?;
            if v == 0 {
                return Err(Error::parse(pos, "numeric points are 1-based"));
            }
            (TokenKind::Number, v - 1)
        } else {
            return Err(Error::parse(pos, format!("unrecognized symbol `{tok}`")));
        };
        match kind {
            None => kind = Some(this_kind),
            Some(k) if k != this_kind => {
                return Err(Error::parse(pos, "mixed letter and numeric notation"));
            }
            _ => {}
        }
        values.push((pos, value));
    }
    let n = values.len();
    if let Some(&(pos, v)) = values.iter().find(|(_, v)| *v >= n) {
        let sym = match kind {
            Some(TokenKind::Letter) => Style::Letter.point(v),
            _ => (v + 1).to_string(),
        };
        return Err(Error::parse(
            pos,
            format!("symbol `{sym}` is outside a {n}-point set"),
        ));
    }
    Transformation::new(values.into_iter().map(|(_, v)| v).collect())
}

/// Parses a set of tuples such as `{(a,a,c),(c,c,a)}` or `(1,1,4,4) (4,4,1,1)`.
///
/// Braces are optional; tuples may be separated by commas, semicolons or
/// whitespace. All tuples must share one arity.
pub fn parse_set(text: &str) -> Result<Vec<Transformation>> {
    let mut out: Vec<Transformation> = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                let close = text[i..]
                    .find(')')
                    .map(|j| i + j)
                    .ok_or_else(|| Error::parse(i, "unterminated tuple"))?;
                let f = parse_tuple(&text[i..=close], i)?;
                if let Some(first) = out.first() {
                    if first.arity() != f.arity() {
                        return Err(Error::parse(
                            i,
                            format!("expected {} entries, found {}", first.arity(), f.arity()),
                        ));
                    }
                }
                out.push(f);
                i = close + 1;
            }
            b'{' | b'}' | b',' | b';' => i += 1,
            c if c.is_ascii_whitespace() => i += 1,
            _ => return Err(Error::parse(i, "expected a tuple")),
        }
    }
    if out.is_empty() {
        return Err(Error::parse(0, "no tuples found"));
    }
    Ok(out)
}

/// Iterator over all `n^n` transformations in lexicographic order.
#[derive(Debug, Clone)]
pub struct AllTransformations {
    current: Option<Vec<u8>>,
    n: u8,
}

impl Iterator for AllTransformations {
    type Item = Transformation;

    fn next(&mut self) -> Option<Transformation> {
        let cur = self.current.as_mut()?;
        let out = Transformation {
            images: cur.clone(),
        };
        // odometer step, least significant digit last
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] + 1 < self.n {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// All self-maps of an `n`-point set, subject to `limits.max_arity`.
pub fn enumerate_all(n: usize, limits: &Limits) -> Result<AllTransformations> {
    limits.check_arity(n)?;
    Ok(AllTransformations {
        current: Some(vec![0; n]),
        n: n as u8,
    })
}
