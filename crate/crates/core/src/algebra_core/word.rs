use std::cmp::Ordering;

/// Letter kinds, ranked in this order for canonical word comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// a: t(a) -> h(a), degree 0
    Arrow,
    /// (e + a a*)^-1 at t(a), degree 0
    Inverse,
    /// d/da: h(a) -> t(a), degree 1
    Derivation,
    /// da: t(a) -> h(a), degree 1
    Differential,
}

/// A letter together with its endpoints, so words compose without the quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub kind: Kind,
    pub arrow: u32,
    pub src: u32,
    pub tgt: u32,
}

impl Letter {
    pub fn new(kind: Kind, arrow: u32, src: u32, tgt: u32) -> Letter {
        Letter { kind, arrow, src, tgt }
    }

    pub fn degree(&self) -> usize {
        match self.kind {
            Kind::Arrow | Kind::Inverse => 0,
            Kind::Derivation | Kind::Differential => 1,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree() == 1
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.kind, self.arrow).cmp(&(other.kind, other.arrow))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A vertex idempotent (no letters) or a composable letter sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
    src: u32,
    tgt: u32,
}

impl Word {
    pub fn idem(v: usize) -> Word {
        Word { letters: Vec::new(), src: v as u32, tgt: v as u32 }
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l], src: l.src, tgt: l.tgt }
    }

    /// Builds a word from letters, returning `None` if they do not compose.
    pub fn from_letters(letters: Vec<Letter>) -> Option<Word> {
        let first = letters.first()?;
        if letters.windows(2).any(|w| w[0].tgt != w[1].src) {
            return None;
        }
        let (src, tgt) = (first.src, letters.last().unwrap().tgt);
        Some(Word { letters, src, tgt })
    }

    /// The sub-word of letters `lo..hi`; an empty range gives the idempotent at that position.
    pub fn slice(&self, lo: usize, hi: usize) -> Word {
        if lo >= hi {
            let v = if lo == 0 {
                self.src
            } else if lo >= self.letters.len() {
                self.tgt
            } else {
                self.letters[lo].src
            };
            return Word { letters: Vec::new(), src: v, tgt: v };
        }
        let letters = self.letters[lo..hi].to_vec();
        Word { src: letters[0].src, tgt: letters[letters.len() - 1].tgt, letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
    pub fn len(&self) -> usize {
        self.letters.len()
    }
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
    pub fn is_idem(&self) -> bool {
        self.letters.is_empty()
    }
    pub fn src(&self) -> usize {
        self.src as usize
    }
    pub fn tgt(&self) -> usize {
        self.tgt as usize
    }
    pub fn is_closed(&self) -> bool {
        self.src == self.tgt
    }

    /// Number of odd letters.
    pub fn degree(&self) -> usize {
        self.letters.iter().filter(|l| l.is_odd()).count()
    }

    pub fn count_kind(&self, k: Kind) -> usize {
        self.letters.iter().filter(|l| l.kind == k).count()
    }

    /// Concatenation `self` then `other`; `None` when the endpoints disagree.
    pub fn concat(&self, other: &Word) -> Option<Word> {
        if self.tgt != other.src {
            return None;
        }
        if self.letters.is_empty() {
            return Some(other.clone());
        }
        if other.letters.is_empty() {
            return Some(self.clone());
        }
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Some(Word { letters, src: self.src, tgt: other.tgt })
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        letters.rotate_left(k);
        Word { src: letters.first().map_or(self.src, |l| l.src), tgt: letters.last().map_or(self.tgt, |l| l.tgt), letters }
    }

    /// Replaces every letter through `f`, which must preserve composability.
    pub fn map_letters(&self, f: impl Fn(&Letter) -> Letter, map_vertex: impl Fn(u32) -> u32) -> Word {
        Word { letters: self.letters.iter().map(f).collect(), src: map_vertex(self.src), tgt: map_vertex(self.tgt) }
    }
}
