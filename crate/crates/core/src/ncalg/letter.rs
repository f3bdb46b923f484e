use std::cmp::Ordering;
use std::fmt;

/// Identifier of an inert parameter letter.
///
/// `ParamId::Y` is the translation parameter `y`; higher ids are allocated
/// fresh by the homotopy recursion and print as `p1`, `p2`, …
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamId(pub u32);

impl ParamId {
    pub const Y: ParamId = ParamId(0);

    /// Smallest id that is not `y` and is strictly above `above`.
    pub fn fresh_after(above: Option<ParamId>) -> ParamId {
        match above {
            Some(ParamId(k)) => ParamId(k + 1),
            None => ParamId(1),
        }
    }
}

impl fmt::Display for ParamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "y"),
            k => write!(f, "p{k}"),
        }
    }
}

/// A generator of the free algebra.
///
/// Active letters `x_i` are the variables the operators act on; parameter
/// letters are carried through every operator unchanged. Active letters sort
/// before parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Active(u32),
    Param(ParamId),
}

impl Letter {
    pub fn x(i: u32) -> Letter {
        Letter::Active(i)
    }

    pub fn y() -> Letter {
        Letter::Param(ParamId::Y)
    }

    pub fn active_index(self) -> Option<u32> {
        match self {
            Letter::Active(i) => Some(i),
            Letter::Param(_) => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Active(i) => write!(f, "x{i}"),
            Letter::Param(p) => write!(f, "{p}"),
        }
    }
}

/// A noncommutative monomial. The empty word is the unit.
///
/// Ordered by length first, then lexicographically on letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    /// Word made of active letters with the given indices.
    pub fn from_indices(indices: &[u32]) -> Word {
        Word(indices.iter().map(|&i| Letter::Active(i)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub(crate) fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn max_active(&self) -> u32 {
        self.0
            .iter()
            .filter_map(|l| l.active_index())
            .max()
            .unwrap_or(0)
    }

    pub fn max_param(&self) -> Option<ParamId> {
        self.0
            .iter()
            .filter_map(|l| match l {
                Letter::Param(p) => Some(*p),
                Letter::Active(_) => None,
            })
            .max()
    }

    pub fn has_params(&self) -> bool {
        self.0.iter().any(|l| matches!(l, Letter::Param(_)))
    }

    /// True when every active letter `1..=n` occurs exactly once and nothing else does.
    pub fn is_multilinear(&self, n: usize) -> bool {
        if self.0.len() != n {
            return false;
        }
        let mut seen = vec![false; n + 1];
        for l in &self.0 {
            match *l {
                Letter::Active(i) if (i as usize) <= n && i >= 1 && !seen[i as usize] => {
                    seen[i as usize] = true
                }
                _ => return false,
            }
        }
        true
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// All `n^d` words of length `d` in the active letters `x_1..x_n`, in canonical order.
pub fn word_basis(n: usize, d: usize) -> Vec<Word> {
    if n == 0 {
        return if d == 0 {
            vec![Word::empty()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::with_capacity(n.pow(d as u32));
    let mut idx = vec![1u32; d];
    loop {
        out.push(Word::from_indices(&idx));
        let mut pos = d;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if (idx[pos] as usize) < n {
                idx[pos] += 1;
                for later in idx.iter_mut().skip(pos + 1) {
                    *later = 1;
                }
                break;
            }
        }
    }
}
