use std::ops::Index;

use crate::rat::{self, Rat};

/// A point of 𝕂ⁿ with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point(Vec<Rat>);

impl Point {
    pub fn new(coords: Vec<Rat>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| rat::int(c)).collect())
    }

    pub fn origin(n: usize) -> Self {
        Point(vec![rat::zero(); n])
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|c| c == &rat::zero())
    }

    pub fn neg(&self) -> Point {
        Point(self.0.iter().map(|c| -c).collect())
    }

    /// Appends `k` zero coordinates.
    pub fn extended(&self, k: usize) -> Point {
        let mut c = self.0.clone();
        c.extend(std::iter::repeat_with(rat::zero).take(k));
        Point(c)
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(rat::to_text).collect();
        parts.join(" ")
    }
}

impl Index<usize> for Point {
    type Output = Rat;

    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}
