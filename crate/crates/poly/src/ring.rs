use std::collections::HashSet;

use crate::error::PolyError;

/// An ordered list of distinct variable names.
///
/// Names starting with `$` are reserved for auxiliary variables introduced
/// by the engine (elimination tags, Rabinowitsch variables, lift parameters)
/// and are rejected by [`RingCtx::new`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingCtx {
    vars: Vec<String>,
}

impl RingCtx {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, PolyError> {
        for n in names {
            if n.as_ref().starts_with('$') {
                return Err(PolyError::InvalidRing(format!(
                    "variable name `{}` uses the reserved `$` prefix",
                    n.as_ref()
                )));
            }
        }
        Self::with_reserved(names)
    }

    /// Like [`RingCtx::new`] but accepts `$`-prefixed names.
    pub fn with_reserved<S: AsRef<str>>(names: &[S]) -> Result<Self, PolyError> {
        let mut seen = HashSet::new();
        let mut vars = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(PolyError::InvalidRing(format!("`{n}` is not a valid variable name")));
            }
            if !seen.insert(n.to_string()) {
                return Err(PolyError::InvalidRing(format!("duplicate variable `{n}`")));
            }
            vars.push(n.to_string());
        }
        Ok(RingCtx { vars })
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn names(&self) -> &[String] {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Appends reserved auxiliary variables `$<base>1, $<base>2, ...`
    /// (or `$<base>` when `count == 1` and `numbered` is false).
    pub fn extend_aux(&self, base: &str, count: usize, numbered: bool) -> RingCtx {
        let mut vars = self.vars.clone();
        for k in 0..count {
            let mut name = if numbered || count > 1 {
                format!("${base}{}", k + 1)
            } else {
                format!("${base}")
            };
            while vars.contains(&name) {
                name.push('\'');
            }
            vars.push(name);
        }
        RingCtx { vars }
    }

    pub fn concat(&self, other: &RingCtx) -> Result<RingCtx, PolyError> {
        let mut names = self.vars.clone();
        names.extend(other.vars.iter().cloned());
        RingCtx::with_reserved(&names)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else { return false };
    let body_ok = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '\'';
    (first.is_ascii_alphabetic() || first == '_' || first == '$') && chars.all(body_ok)
}
