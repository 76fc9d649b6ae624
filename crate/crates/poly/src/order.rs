use std::cmp::Ordering;

use crate::error::{check_arity, PolyError};
use crate::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// `dp`: total degree, ties broken reverse-lexicographically.
    DegRevLexGlobal,
    /// `lp`: lexicographic.
    LexGlobal,
    /// `ds`: lower total degree is larger, ties reverse-lexicographic.
    DegRevLexLocal,
    /// `ls`: negative lexicographic.
    LexLocal,
}

impl BlockKind {
    pub fn is_global(self) -> bool {
        matches!(self, BlockKind::DegRevLexGlobal | BlockKind::LexGlobal)
    }

    pub fn tag(self) -> &'static str {
        match self {
            BlockKind::DegRevLexGlobal => "dp",
            BlockKind::LexGlobal => "lp",
            BlockKind::DegRevLexLocal => "ds",
            BlockKind::LexLocal => "ls",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "dp" => BlockKind::DegRevLexGlobal,
            "lp" => BlockKind::LexGlobal,
            "ds" => BlockKind::DegRevLexLocal,
            "ls" => BlockKind::LexLocal,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub vars: Vec<usize>,
    pub kind: BlockKind,
}

/// A block monomial order. Blocks are compared left to right; the first
/// block on which two monomials differ decides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderSpec {
    nvars: usize,
    blocks: Vec<Block>,
}

impl OrderSpec {
    pub fn new(nvars: usize, blocks: Vec<Block>) -> Result<Self, PolyError> {
        let mut seen = vec![false; nvars];
        for b in &blocks {
            for &v in &b.vars {
                if v >= nvars || seen[v] {
                    return Err(PolyError::InvalidRing(format!(
                        "order blocks must partition the {nvars} variables"
                    )));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(PolyError::InvalidRing(format!(
                "order blocks must partition the {nvars} variables"
            )));
        }
        let blocks = blocks.into_iter().filter(|b| !b.vars.is_empty()).collect();
        Ok(OrderSpec { nvars, blocks })
    }

    fn single(nvars: usize, kind: BlockKind) -> Self {
        let blocks = if nvars == 0 {
            vec![]
        } else {
            vec![Block { vars: (0..nvars).collect(), kind }]
        };
        OrderSpec { nvars, blocks }
    }

    pub fn degrevlex(nvars: usize) -> Self {
        Self::single(nvars, BlockKind::DegRevLexGlobal)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::single(nvars, BlockKind::LexGlobal)
    }

    pub fn local_degrevlex(nvars: usize) -> Self {
        Self::single(nvars, BlockKind::DegRevLexLocal)
    }

    pub fn local_lex(nvars: usize) -> Self {
        Self::single(nvars, BlockKind::LexLocal)
    }

    /// Two global `dp` blocks: `first` dominates, the rest follow.
    pub fn elimination(nvars: usize, first: &[usize]) -> Self {
        let rest: Vec<usize> = (0..nvars).filter(|v| !first.contains(v)).collect();
        OrderSpec::new(
            nvars,
            vec![
                Block { vars: first.to_vec(), kind: BlockKind::DegRevLexGlobal },
                Block { vars: rest, kind: BlockKind::DegRevLexGlobal },
            ],
        )
        .expect("elimination blocks partition the variables")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// True iff every block is global, i.e. the order is a well-ordering.
    pub fn is_global(&self) -> bool {
        self.blocks.iter().all(|b| b.kind.is_global())
    }

    pub fn is_local(&self) -> bool {
        self.blocks.iter().all(|b| !b.kind.is_global())
    }

    /// True for a single `ds` block: lower degree always wins. Truncated
    /// normal forms rely on this.
    pub fn is_local_degree(&self) -> bool {
        self.blocks.len() <= 1
            && self.blocks.iter().all(|b| b.kind == BlockKind::DegRevLexLocal)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for block in &self.blocks {
            let ord = compare_block(block, a, b);
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }

    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        check_arity(self.nvars, a.nvars())?;
        check_arity(self.nvars, b.nvars())?;
        Ok(self.compare(a, b))
    }

    /// Appends `extra` variables as a leading block of the given kind
    /// (auxiliary variables dominate everything else).
    pub fn with_leading_aux(&self, extra: usize, kind: BlockKind) -> OrderSpec {
        let n = self.nvars;
        let mut blocks = vec![Block { vars: (n..n + extra).collect(), kind }];
        blocks.extend(self.blocks.iter().cloned());
        OrderSpec::new(n + extra, blocks).expect("valid extension")
    }

    /// Parses `dp`, `lp`, `ds`, `ls`, or a block list such as
    /// `dp(x,y),ls(t)` against the given variable names.
    pub fn parse(text: &str, names: &[String]) -> Result<OrderSpec, PolyError> {
        let text = text.trim();
        let n = names.len();
        if let Some(kind) = BlockKind::from_tag(text) {
            return Ok(Self::single(n, kind));
        }
        let bad = |msg: String| PolyError::Syntax { pos: 0, msg };
        let mut blocks = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| bad(format!("expected `(` in order `{text}`")))?;
            let close = rest.find(')').ok_or_else(|| bad(format!("expected `)` in order `{text}`")))?;
            let kind = BlockKind::from_tag(rest[..open].trim())
                .ok_or_else(|| bad(format!("unknown order block `{}`", rest[..open].trim())))?;
            let mut vars = Vec::new();
            for name in rest[open + 1..close].split(',') {
                let name = name.trim();
                let idx = names.iter().position(|v| v == name).ok_or_else(|| {
                    PolyError::UnknownVariable { name: name.to_string(), pos: 0 }
                })?;
                vars.push(idx);
            }
            blocks.push(Block { vars, kind });
            rest = rest[close + 1..].trim_start().trim_start_matches(',').trim_start();
        }
        OrderSpec::new(n, blocks)
    }
}

fn compare_block(block: &Block, a: &Monomial, b: &Monomial) -> Ordering {
    let vars = &block.vars;
    let deg = |m: &Monomial| -> u64 { vars.iter().map(|&v| m.exp(v) as u64).sum() };
    let revlex = || {
        for &v in vars.iter().rev() {
            let (x, y) = (a.exp(v), b.exp(v));
            if x != y {
                return y.cmp(&x);
            }
        }
        Ordering::Equal
    };
    let lex = || {
        for &v in vars {
            let (x, y) = (a.exp(v), b.exp(v));
            if x != y {
                return x.cmp(&y);
            }
        }
        Ordering::Equal
    };
    match block.kind {
        BlockKind::DegRevLexGlobal => deg(a).cmp(&deg(b)).then_with(revlex),
        BlockKind::LexGlobal => lex(),
        BlockKind::DegRevLexLocal => deg(b).cmp(&deg(a)).then_with(revlex),
        BlockKind::LexLocal => lex().reverse(),
    }
}
