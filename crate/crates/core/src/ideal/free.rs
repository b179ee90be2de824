//! Ideal checks in a free monoid, verified exhaustively up to a length bound.
//!
//! Words are letter-index vectors; the empty word is the unit and never a
//! member. Every quantifier ranges over nonempty words whose combined length
//! stays within the bound, so each verdict is only a claim about that bound.

use crate::verdict::Verdict;

pub type Letters = Vec<usize>;

/// All words of exactly `len` letters over `alphabet` symbols, in lex order.
pub fn words_of_length(alphabet: usize, len: usize) -> Vec<Letters> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet).map(move |a| {
                    let mut next = w.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out
}

/// Nonempty words up to `max_len`, length-then-lex.
pub fn words_up_to(alphabet: usize, max_len: usize) -> Vec<Letters> {
    (1..=max_len).flat_map(|len| words_of_length(alphabet, len)).collect()
}

fn concat(parts: &[&[usize]]) -> Letters {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// `x` is a factor of `w`.
pub fn contains_factor(w: &[usize], factor: &[usize]) -> bool {
    factor.is_empty() || w.windows(factor.len()).any(|win| win == factor)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreePrimeWitness {
    pub x: Letters,
    pub y: Letters,
    /// `true` when `xy ∈ Q` with neither factor in `Q`.
    pub product_without_factor: bool,
}

/// A subset of the free monoid over `alphabet` letters given by a
/// membership predicate, examined up to `bound`.
pub struct BoundedWordIdeal<F> {
    pub alphabet: usize,
    pub bound: usize,
    member: F,
}

impl<F: Fn(&[usize]) -> bool> BoundedWordIdeal<F> {
    pub fn new(alphabet: usize, bound: usize, member: F) -> Self {
        BoundedWordIdeal { alphabet, bound, member }
    }

    pub fn contains(&self, w: &[usize]) -> bool {
        !w.is_empty() && (self.member)(w)
    }

    /// Nonempty pairs `(x, y)` with `|x| + |y| <= bound`.
    fn pairs(&self) -> impl Iterator<Item = (Letters, Letters)> + '_ {
        (2..=self.bound).flat_map(move |total| {
            (1..total).flat_map(move |lx| {
                let xs = words_of_length(self.alphabet, lx);
                let ys = words_of_length(self.alphabet, total - lx);
                xs.into_iter().flat_map(move |x| ys.clone().into_iter().map(move |y| (x.clone(), y)))
            })
        })
    }

    /// Two-sided absorption within the bound.
    pub fn is_ideal(&self) -> Verdict<(Letters, Letters)> {
        Verdict::from_first(self.pairs().find(|(x, y)| {
            let xy = concat(&[x, y]);
            (self.contains(x) || self.contains(y)) && !self.contains(&xy)
        }))
    }

    /// `abc ∈ Q ⇒ ab ∈ Q ∨ bc ∈ Q` for nonempty `a, b, c` with `|abc| <= bound`.
    pub fn associativity(&self) -> Verdict<(Letters, Letters, Letters)> {
        for total in 3..=self.bound {
            for la in 1..total - 1 {
                for lb in 1..total - la {
                    let lc = total - la - lb;
                    for a in words_of_length(self.alphabet, la) {
                        for b in words_of_length(self.alphabet, lb) {
                            if self.contains(&concat(&[&a, &b])) {
                                continue;
                            }
                            for c in words_of_length(self.alphabet, lc) {
                                if self.contains(&concat(&[&a, &b, &c])) && !self.contains(&concat(&[&b, &c])) {
                                    return Verdict::Fails((a, b, c));
                                }
                            }
                        }
                    }
                }
            }
        }
        Verdict::Holds
    }

    /// `xy ∈ Q ⇔ x ∈ Q ∨ y ∈ Q` within the bound. Pairs with an empty factor
    /// satisfy this trivially and are skipped.
    pub fn primality(&self) -> Verdict<FreePrimeWitness> {
        Verdict::from_first(self.pairs().find_map(|(x, y)| {
            let product = self.contains(&concat(&[&x, &y]));
            let factor = self.contains(&x) || self.contains(&y);
            (product != factor).then_some(FreePrimeWitness { x, y, product_without_factor: product })
        }))
    }

    /// Every `x ∉ Q` with `|x| < bound` extends on both sides to a word
    /// outside `Q` by a nonempty `y ∉ Q`. The empty word (the unit) is never
    /// a witness.
    pub fn weak_simplicity(&self) -> Verdict<Letters> {
        for x in words_up_to(self.alphabet, self.bound.saturating_sub(1)) {
            if self.contains(&x) {
                continue;
            }
            let room = self.bound - x.len();
            let candidates: Vec<Letters> =
                words_up_to(self.alphabet, room).into_iter().filter(|y| !self.contains(y)).collect();
            let right = candidates.iter().any(|y| !self.contains(&concat(&[&x, y])));
            let left = candidates.iter().any(|z| !self.contains(&concat(&[z, &x])));
            if !(right && left) {
                return Verdict::Fails(x);
            }
        }
        Verdict::Holds
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: usize = 0;
    const B: usize = 1;

    #[test]
    fn factor_ab_is_associative_not_prime() {
        let q = BoundedWordIdeal::new(2, 8, |w: &[usize]| contains_factor(w, &[A, B]));
        assert!(q.is_ideal().holds());
        assert!(q.associativity().holds());
        assert_eq!(
            q.primality(),
            Verdict::Fails(FreePrimeWitness { x: vec![A], y: vec![B], product_without_factor: true })
        );
        assert!(q.weak_simplicity().holds());
    }

    #[test]
    fn letter_a_is_prime() {
        let q = BoundedWordIdeal::new(2, 8, |w: &[usize]| w.contains(&A));
        assert!(q.is_ideal().holds());
        assert!(q.primality().holds());
        assert!(q.associativity().holds());
    }

    #[test]
    fn factor_aba_is_not_associative() {
        // aba ∈ Q while ab and ba are not
        let q = BoundedWordIdeal::new(2, 5, |w: &[usize]| contains_factor(w, &[A, B, A]));
        assert_eq!(q.associativity(), Verdict::Fails((vec![A], vec![B], vec![A])));
    }

    #[test]
    fn word_counts() {
        assert_eq!(words_up_to(2, 3).len(), 14);
        assert_eq!(words_of_length(3, 0), vec![Vec::<usize>::new()]);
    }
}
