//! Line-oriented problem files.
//!
//! ```text
//! field Q
//! ring y1 y2
//! task retract
//! point 0 0
//! variety X
//!   gen y1^2 - 2*y1 + y2^2
//!   dim 1
//! end
//! variety Y ring z1 z2
//!   gen z1^2 + z2^2 - 1
//! end
//! map F target Y
//!   coord y1^2 - y2^2 | y1^2 + y2^2
//!   coord 2*y1*y2 | y1^2 + y2^2
//! end
//! ```

use std::fmt;
use std::str::FromStr;

use urr_poly::{parse_poly, rat, Point, Poly, PolyError, RingCtx};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::variety::{RationalMap, VarietyPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Task {
    Gb,
    Member,
    Dim,
    Smooth,
    Genpos,
    Sigma,
    Lift,
    Retract,
    Uniformize,
    Check,
}

impl Task {
    pub const ALL: [Task; 10] = [
        Task::Gb,
        Task::Member,
        Task::Dim,
        Task::Smooth,
        Task::Genpos,
        Task::Sigma,
        Task::Lift,
        Task::Retract,
        Task::Uniformize,
        Task::Check,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::Gb => "gb",
            Task::Member => "member",
            Task::Dim => "dim",
            Task::Smooth => "smooth",
            Task::Genpos => "genpos",
            Task::Sigma => "sigma",
            Task::Lift => "lift",
            Task::Retract => "retract",
            Task::Uniformize => "uniformize",
            Task::Check => "check",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Task::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| format!("unknown task `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyDecl {
    pub ring: RingCtx,
    pub gens: Vec<Poly>,
    pub dim: Option<usize>,
    pub prime: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDecl {
    pub ring: RingCtx,
    pub gens: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub source: RingCtx,
    /// Name of the target variety; `None` means affine space of the
    /// right dimension.
    pub target: Option<String>,
    pub coords: Vec<(Poly, Poly)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub ring: RingCtx,
    pub task: Option<Task>,
    pub seed: Option<u64>,
    pub order: Option<String>,
    pub point: Option<Point>,
    pub varieties: Vec<(String, VarietyDecl)>,
    pub ideals: Vec<(String, IdealDecl)>,
    pub maps: Vec<(String, MapDecl)>,
    pub polys: Vec<(String, Poly)>,
}

enum Block {
    Variety(String, VarietyDecl),
    Ideal(String, IdealDecl),
    Map(String, MapDecl),
}

struct Cursor<'a> {
    context: &'a str,
    line: usize,
}

impl Cursor<'_> {
    fn err(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse { context: self.context.to_string(), line: self.line, col, msg: msg.into() }
    }

    fn poly(&self, text: &str, offset: usize, ring: &RingCtx) -> Result<Poly> {
        parse_poly(text, ring).map_err(|e| match e {
            PolyError::Syntax { pos, msg } => self.err(offset + pos + 1, format!("syntax error: {msg}")),
            PolyError::UnknownVariable { name, pos } => {
                self.err(offset + pos + 1, format!("unknown variable `{name}`"))
            }
            other => self.err(offset + 1, other.to_string()),
        })
    }
}

/// Whitespace-separated words with their 0-based character columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (ci, (bi, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((ci, bi)),
            (true, Some((sc, sb))) => {
                out.push((sc, &line[sb..bi]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((sc, sb)) = start {
        out.push((sc, &line[sb..]));
    }
    out
}

/// Text after the first word, with its character column.
fn rest_after_keyword(line: &str) -> (usize, &str) {
    let trimmed = line.trim_start();
    let lead = line.chars().count() - trimmed.chars().count();
    let kw_len = trimmed.chars().take_while(|c| !c.is_whitespace()).count();
    let after: String = trimmed.chars().skip(kw_len).collect();
    let pad = after.chars().take_while(|c| c.is_whitespace()).count();
    let byte = line.char_indices().nth(lead + kw_len + pad).map(|(b, _)| b).unwrap_or(line.len());
    (lead + kw_len + pad, line[byte..].trim_end())
}

impl Problem {
    pub fn parse(text: &str) -> Result<Problem> {
        Problem::parse_named(text, "problem")
    }

    /// Parses with `context` (usually the file name) in error messages.
    pub fn parse_named(text: &str, context: &str) -> Result<Problem> {
        let mut cur = Cursor { context, line: 0 };
        let mut ring: Option<RingCtx> = None;
        let mut field_seen = false;
        let mut p = Problem {
            ring: RingCtx::new::<&str>(&[]).expect("empty ring"),
            task: None,
            seed: None,
            order: None,
            point: None,
            varieties: Vec::new(),
            ideals: Vec::new(),
            maps: Vec::new(),
            polys: Vec::new(),
        };
        let mut block: Option<Block> = None;
        for (idx, raw) in text.lines().enumerate() {
            cur.line = idx + 1;
            let line = raw.split('#').next().unwrap_or("");
            let ws = words(line);
            let Some(&(kcol, kw)) = ws.first() else { continue };
            let need_ring = |cur: &Cursor| ring.clone().ok_or_else(|| cur.err(kcol + 1, "`ring` must come first"));

            if let Some(b) = block.as_mut() {
                match (kw, b) {
                    ("end", _) => {
                        match block.take().expect("open block") {
                            Block::Variety(n, d) => p.varieties.push((n, d)),
                            Block::Ideal(n, d) => p.ideals.push((n, d)),
                            Block::Map(n, d) => p.maps.push((n, d)),
                        }
                        continue;
                    }
                    ("gen", Block::Variety(_, VarietyDecl { ring, gens, .. }))
                    | ("gen", Block::Ideal(_, IdealDecl { ring, gens })) => {
                        let (off, expr) = rest_after_keyword(line);
                        gens.push(cur.poly(expr, off, ring)?);
                    }
                    ("dim", Block::Variety(_, d)) => {
                        let (c, w) = ws.get(1).copied().ok_or_else(|| cur.err(kcol + 1, "missing dimension"))?;
                        d.dim = Some(w.parse().map_err(|_| cur.err(c + 1, "dimension must be a natural number"))?);
                    }
                    ("prime", Block::Variety(_, d)) => {
                        d.prime = match ws.get(1).map(|w| w.1) {
                            None | Some("yes") => true,
                            Some("no") => false,
                            Some(_) => return Err(cur.err(ws[1].0 + 1, "expected `yes` or `no`")),
                        };
                    }
                    ("coord", Block::Map(_, m)) => {
                        let (off, expr) = rest_after_keyword(line);
                        let (num, den, den_off) = match expr.find('|') {
                            Some(bar) => {
                                let den = &expr[bar + 1..];
                                let den_off = off + expr[..=bar].chars().count();
                                (&expr[..bar], den, den_off)
                            }
                            None => (expr, "1", off),
                        };
                        let n = cur.poly(num, off, &m.source)?;
                        let d = cur.poly(den, den_off, &m.source)?;
                        if d.is_zero() {
                            return Err(cur.err(den_off + 1, "zero denominator"));
                        }
                        m.coords.push((n, d));
                    }
                    (other, _) => return Err(cur.err(kcol + 1, format!("unexpected `{other}` inside a block"))),
                }
                continue;
            }

            match kw {
                "field" => {
                    match ws.get(1) {
                        Some(&(_, "Q")) => {}
                        Some(&(c, f)) => return Err(cur.err(c + 1, format!("unsupported field `{f}`; only Q"))),
                        None => return Err(cur.err(kcol + 1, "missing field tag")),
                    }
                    field_seen = true;
                }
                "ring" => {
                    if ring.is_some() {
                        return Err(cur.err(kcol + 1, "ring declared twice"));
                    }
                    let names: Vec<&str> = ws[1..].iter().map(|w| w.1).collect();
                    let r = RingCtx::new(&names).map_err(|e| cur.err(kcol + 1, e.to_string()))?;
                    p.ring = r.clone();
                    ring = Some(r);
                }
                "task" => {
                    let (c, w) = ws.get(1).copied().ok_or_else(|| cur.err(kcol + 1, "missing task"))?;
                    p.task = Some(w.parse().map_err(|e: String| cur.err(c + 1, e))?);
                }
                "seed" => {
                    let (c, w) = ws.get(1).copied().ok_or_else(|| cur.err(kcol + 1, "missing seed"))?;
                    p.seed = Some(w.parse().map_err(|_| cur.err(c + 1, "seed must be a natural number"))?);
                }
                "order" => {
                    let (_, rest) = rest_after_keyword(line);
                    p.order = Some(rest.to_string());
                }
                "point" => {
                    let r = need_ring(&cur)?;
                    let mut coords = Vec::new();
                    for &(c, w) in &ws[1..] {
                        coords.push(rat::parse_rat(w).ok_or_else(|| cur.err(c + 1, format!("bad rational `{w}`")))?);
                    }
                    if coords.len() != r.arity() {
                        return Err(cur.err(kcol + 1, format!("point has {} coordinates, ring has {}", coords.len(), r.arity())));
                    }
                    p.point = Some(Point::new(coords));
                }
                "poly" => {
                    let r = need_ring(&cur)?;
                    let (_, name) = ws.get(1).copied().ok_or_else(|| cur.err(kcol + 1, "missing name"))?;
                    let (off, after) = rest_after_keyword(line);
                    let (off2, expr) = rest_after_keyword(after);
                    p.polys.push((name.to_string(), cur.poly(expr, off + off2, &r)?));
                }
                "variety" | "ideal" | "map" => {
                    let base = need_ring(&cur)?;
                    let (_, name) = ws.get(1).copied().ok_or_else(|| cur.err(kcol + 1, "missing name"))?;
                    let mut own_ring = None;
                    let mut source = None;
                    let mut target = None;
                    let mut k = 2;
                    while k < ws.len() {
                        let (c, opt) = ws[k];
                        match (kw, opt) {
                            ("variety" | "ideal", "ring") => {
                                let names: Vec<&str> = ws[k + 1..].iter().map(|w| w.1).collect();
                                own_ring = Some(RingCtx::new(&names).map_err(|e| cur.err(c + 1, e.to_string()))?);
                                k = ws.len();
                                continue;
                            }
                            ("map", "source") | ("map", "target") => {
                                let (c2, v) = ws.get(k + 1).copied().ok_or_else(|| cur.err(c + 1, "missing name"))?;
                                if opt == "source" {
                                    let r = p
                                        .varieties
                                        .iter()
                                        .find(|(n, _)| n == v)
                                        .map(|(_, d)| d.ring.clone())
                                        .ok_or_else(|| cur.err(c2 + 1, format!("unknown variety `{v}`")))?;
                                    source = Some(r);
                                } else {
                                    if !p.varieties.iter().any(|(n, _)| n == v) {
                                        return Err(cur.err(c2 + 1, format!("unknown variety `{v}`")));
                                    }
                                    target = Some(v.to_string());
                                }
                                k += 2;
                            }
                            _ => return Err(cur.err(c + 1, format!("unexpected `{opt}`"))),
                        }
                    }
                    block = Some(match kw {
                        "variety" => Block::Variety(
                            name.to_string(),
                            VarietyDecl { ring: own_ring.unwrap_or(base), gens: Vec::new(), dim: None, prime: true },
                        ),
                        "ideal" => Block::Ideal(name.to_string(), IdealDecl { ring: own_ring.unwrap_or(base), gens: Vec::new() }),
                        _ => Block::Map(
                            name.to_string(),
                            MapDecl { source: source.unwrap_or(base), target, coords: Vec::new() },
                        ),
                    });
                }
                other => return Err(cur.err(kcol + 1, format!("unknown keyword `{other}`"))),
            }
        }
        if block.is_some() {
            cur.line += 1;
            return Err(cur.err(1, "unterminated block, expected `end`"));
        }
        if !field_seen {
            return Err(Error::Parse { context: context.into(), line: 1, col: 1, msg: "missing `field Q`".into() });
        }
        if ring.is_none() {
            return Err(Error::Parse { context: context.into(), line: 1, col: 1, msg: "missing `ring`".into() });
        }
        Ok(p)
    }

    fn missing(what: &str, name: &str) -> Error {
        Error::PreconditionViolated(format!("problem has no {what} named `{name}`"))
    }

    pub fn variety_decl(&self, name: &str) -> Option<&VarietyDecl> {
        self.varieties.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    pub fn variety(&self, name: &str) -> Result<VarietyPresentation> {
        let d = self.variety_decl(name).ok_or_else(|| Problem::missing("variety", name))?;
        let dim = match d.dim {
            Some(k) => k,
            None if d.gens.is_empty() => d.ring.arity(),
            None => crate::ideal::krull_dim(&Ideal::new(&d.ring, d.gens.clone())?)?,
        };
        VarietyPresentation::new(&d.ring, d.gens.clone(), dim, d.prime)
    }

    pub fn ideal(&self, name: &str) -> Result<Ideal> {
        let d = self.ideals.iter().find(|(n, _)| n == name).map(|(_, d)| d).ok_or_else(|| Problem::missing("ideal", name))?;
        Ideal::new(&d.ring, d.gens.clone())
    }

    pub fn has_map(&self, name: &str) -> bool {
        self.maps.iter().any(|(n, _)| n == name)
    }

    pub fn map(&self, name: &str) -> Result<RationalMap> {
        let d = self.maps.iter().find(|(n, _)| n == name).map(|(_, d)| d).ok_or_else(|| Problem::missing("map", name))?;
        let target = match &d.target {
            Some(t) => self.variety(t)?,
            None => {
                let names: Vec<String> = (1..=d.coords.len()).map(|i| format!("t{i}")).collect();
                VarietyPresentation::affine_space(&RingCtx::new(&names)?)
            }
        };
        RationalMap::new(d.coords.clone(), target)
    }

    pub fn poly(&self, name: &str) -> Result<&Poly> {
        self.polys.iter().find(|(n, _)| n == name).map(|(_, p)| p).ok_or_else(|| Problem::missing("poly", name))
    }

    pub fn point_or_err(&self) -> Result<&Point> {
        self.point.as_ref().ok_or_else(|| Error::PreconditionViolated("problem has no `point`".into()))
    }
}
