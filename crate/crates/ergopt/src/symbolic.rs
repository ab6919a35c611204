//! Subshifts of finite type and locally constant potentials.
//!
//! An [`SftSystem`] is an alphabet with a 0/1 transition matrix; the points
//! of the subshift are the one-sided infinite symbol sequences whose
//! adjacent pairs are allowed. (Ergodic optimisation of locally constant
//! potentials is insensitive to the one-sided/two-sided distinction, so only
//! one-sided shifts are modelled.) A [`Potential`] assigns a rational value
//! to every admissible word of a fixed window length `k` — a locally
//! constant function of the first `k` symbols.
//!
//! [`SftSystem::lift`] recodes the pair into a [`TransitionGraph`]: vertices
//! are admissible `(k-1)`-words, edges are admissible `k`-words, and the
//! edge weight is the potential of the word. Window-1 potentials are lifted
//! on the 2-word graph with the weight taken at the *source* symbol (the
//! target convention would be equally valid; this one is fixed and tested).
//! Shift-invariant measures correspond to invariant edge-measures of the
//! lift, preserving ergodic averages, so all optimisation happens on the
//! graph side.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::TransitionGraph;
use crate::Rational;

/// Finite alphabet plus allowed-transition matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftSystem {
    alphabet: Vec<char>,
    allowed: Vec<Vec<bool>>,
}

impl SftSystem {
    /// Validates and builds a system. Every symbol must keep at least one
    /// allowed successor and predecessor; systems violating this are
    /// rejected rather than silently pruned.
    pub fn new(alphabet: Vec<char>, allowed: Vec<Vec<bool>>) -> Result<Self> {
        let n = alphabet.len();
        if n == 0 {
            return Err(Error::DegenerateSystem("empty alphabet".into()));
        }
        for (i, a) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(a) {
                return Err(Error::DegenerateSystem(format!("repeated symbol {a:?}")));
            }
        }
        if allowed.len() != n || allowed.iter().any(|row| row.len() != n) {
            return Err(Error::DegenerateSystem(format!(
                "transition matrix must be {n} x {n}"
            )));
        }
        for s in 0..n {
            if !allowed[s].iter().any(|&b| b) {
                return Err(Error::DegenerateSystem(format!(
                    "symbol {:?} has no allowed successor",
                    alphabet[s]
                )));
            }
            if !allowed.iter().any(|row| row[s]) {
                return Err(Error::DegenerateSystem(format!(
                    "symbol {:?} has no allowed predecessor",
                    alphabet[s]
                )));
            }
        }
        Ok(Self { alphabet, allowed })
    }

    /// The full shift: every transition allowed.
    pub fn full_shift(alphabet: Vec<char>) -> Result<Self> {
        let n = alphabet.len();
        Self::new(alphabet, vec![vec![true; n]; n])
    }

    /// Full shift minus the given two-letter words.
    pub fn from_forbidden_words(alphabet: Vec<char>, forbidden: &[String]) -> Result<Self> {
        let n = alphabet.len();
        let mut allowed = vec![vec![true; n]; n];
        for word in forbidden {
            let symbols: Vec<char> = word.chars().collect();
            if symbols.len() != 2 {
                return Err(Error::Format(format!(
                    "forbidden word {word:?} must have exactly 2 symbols \
                     (longer constraints need an explicit transition matrix \
                     on a recoded alphabet)"
                )));
            }
            let find = |c: char| {
                alphabet
                    .iter()
                    .position(|&a| a == c)
                    .ok_or_else(|| Error::Format(format!("symbol {c:?} not in alphabet")))
            };
            allowed[find(symbols[0])?][find(symbols[1])?] = false;
        }
        Self::new(alphabet, allowed)
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_allowed(&self, from: usize, to: usize) -> bool {
        self.allowed[from][to]
    }

    pub fn symbol_index(&self, c: char) -> Option<usize> {
        self.alphabet.iter().position(|&a| a == c)
    }

    /// Renders a symbol-index word as a string over the alphabet.
    pub fn word_string(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.alphabet[i]).collect()
    }

    /// Parses a word, validating every symbol.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        text.chars()
            .map(|c| {
                self.symbol_index(c)
                    .ok_or_else(|| Error::Format(format!("symbol {c:?} not in alphabet")))
            })
            .collect()
    }

    /// True iff every adjacent pair is allowed (words of length < 2 are
    /// admissible by convention).
    pub fn is_admissible(&self, word: &[usize]) -> bool {
        word.windows(2).all(|w| self.allowed[w[0]][w[1]])
    }

    /// All admissible words of length `k`, lexicographic in symbol indices.
    pub fn admissible_words(&self, k: usize) -> Vec<Vec<usize>> {
        assert!(k >= 1);
        let mut words: Vec<Vec<usize>> = (0..self.alphabet.len()).map(|s| vec![s]).collect();
        for _ in 1..k {
            let mut longer = Vec::new();
            for word in &words {
                let last = *word.last().unwrap();
                for next in 0..self.alphabet.len() {
                    if self.allowed[last][next] {
                        let mut w = word.clone();
                        w.push(next);
                        longer.push(w);
                    }
                }
            }
            words = longer;
        }
        words
    }

    /// Lifts a potential to the transition graph on `(K-1)`-words, where
    /// `K = max(window, 2)`.
    pub fn lift(&self, p: &Potential) -> Result<TransitionGraph<Rational>> {
        Ok(self.lift_with_labels(p)?.0)
    }

    /// As [`SftSystem::lift`], also returning the vertex words (useful for
    /// printing cycles symbolically).
    pub fn lift_with_labels(&self, p: &Potential) -> Result<(TransitionGraph<Rational>, Vec<String>)> {
        p.validate(self)?;
        let big_k = p.window().max(2);
        let vertices = self.admissible_words(big_k - 1);
        let mut vertex_id: BTreeMap<&[usize], usize> = BTreeMap::new();
        for (id, w) in vertices.iter().enumerate() {
            vertex_id.insert(w.as_slice(), id);
        }
        let mut edges = Vec::new();
        for word in self.admissible_words(big_k) {
            let source = vertex_id[&word[..big_k - 1]];
            let target = vertex_id[&word[1..]];
            let key = self.word_string(&word[..p.window()]);
            edges.push((source, target, p.values()[&key].clone()));
        }
        let labels = vertices.iter().map(|w| self.word_string(w)).collect();
        Ok((TransitionGraph::new(vertices.len(), edges)?, labels))
    }

    /// Refines both potentials to their common window and lifts them onto
    /// the shared graph structure, ready for envelope computations.
    pub fn lift_pair(
        &self,
        f: &Potential,
        g: &Potential,
    ) -> Result<(TransitionGraph<Rational>, TransitionGraph<Rational>)> {
        let window = f.window().max(g.window());
        let lifted_f = self.lift(&f.refine(window, self)?)?;
        let lifted_g = self.lift(&g.refine(window, self)?)?;
        debug_assert!(lifted_f.same_structure(&lifted_g));
        Ok((lifted_f, lifted_g))
    }
}

/// A locally constant potential: exact values on the admissible words of one
/// window length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    window: usize,
    values: BTreeMap<String, Rational>,
}

impl Potential {
    /// Validates against the system: the key set must be exactly the
    /// admissible `window`-words.
    pub fn new(sys: &SftSystem, window: usize, values: BTreeMap<String, Rational>) -> Result<Self> {
        if window == 0 {
            return Err(Error::InadmissiblePotential("window must be at least 1".into()));
        }
        let p = Self { window, values };
        p.validate(sys)?;
        Ok(p)
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn values(&self) -> &BTreeMap<String, Rational> {
        &self.values
    }

    fn validate(&self, sys: &SftSystem) -> Result<()> {
        let admissible = sys.admissible_words(self.window);
        for word in &admissible {
            let key = sys.word_string(word);
            if !self.values.contains_key(&key) {
                return Err(Error::InadmissiblePotential(format!(
                    "missing value for admissible word {key:?}"
                )));
            }
        }
        if self.values.len() != admissible.len() {
            let admissible: std::collections::BTreeSet<String> =
                admissible.iter().map(|w| sys.word_string(w)).collect();
            let extra = self
                .values
                .keys()
                .find(|k| !admissible.contains(*k))
                .expect("size mismatch implies an extra key");
            return Err(Error::InadmissiblePotential(format!(
                "value given for inadmissible word {extra:?}"
            )));
        }
        Ok(())
    }

    /// Extends the window: each admissible `window_new`-word takes the value
    /// of its length-`window` prefix. The lifted maximum is unchanged.
    pub fn refine(&self, window_new: usize, sys: &SftSystem) -> Result<Self> {
        if window_new < self.window {
            return Err(Error::InvalidWindow { from: self.window, to: window_new });
        }
        if window_new == self.window {
            return Ok(self.clone());
        }
        let values = sys
            .admissible_words(window_new)
            .into_iter()
            .map(|word| {
                let value = self.values[&sys.word_string(&word[..self.window])].clone();
                (sys.word_string(&word), value)
            })
            .collect();
        Ok(Self { window: window_new, values })
    }

    /// `self + t * other` on the common (maximal) window.
    pub fn combine(&self, other: &Potential, t: &Rational, sys: &SftSystem) -> Result<Self> {
        let window = self.window.max(other.window);
        let a = self.refine(window, sys)?;
        let b = other.refine(window, sys)?;
        let values = a
            .values
            .into_iter()
            .map(|(word, va)| {
                let vb = b.values[&word].clone();
                (word, va + t.clone() * vb)
            })
            .collect();
        Ok(Self { window, values })
    }

    /// Maximum absolute value — the sup norm of the locally constant
    /// function, and the Lipschitz constant of the perturbation curve in
    /// this direction.
    pub fn sup_norm(&self) -> Rational {
        use num_traits::Signed;
        self.values
            .values()
            .map(|v| v.abs())
            .max()
            .expect("potential has at least one value")
    }
}
