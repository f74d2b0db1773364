use std::fmt;

use itertools::Itertools;

/// A permutation of `0..n`, stored as the image of each position:
/// the element at position `i` moves to position `self.image(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// `None` unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self(images))
    }

    /// The permutation that sorts `keys` ascending (ties keep input order).
    pub fn sorting(keys: &[usize]) -> Self {
        let order: Vec<usize> = (0..keys.len()).sorted_by_key(|&i| (keys[i], i)).collect();
        let mut images = vec![0; keys.len()];
        for (rank, &i) in order.iter().enumerate() {
            images[i] = rank;
        }
        Self(images)
    }

    /// All permutations of `0..n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Self> {
        (0..n).permutations(n).map(Self).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Self(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&j| self.0[j]).collect())
    }

    /// Rearranges `items` so that `items[i]` lands at position `image(i)`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (i, x) in items.iter().enumerate() {
            out[self.0[i]] = Some(x.clone());
        }
        out.into_iter().map(|x| x.expect("bijection")).collect()
    }

    /// Adjacent transpositions `k ↔ k+1` produced by bubble-sorting the
    /// images; applying them left to right realizes the permutation.
    pub fn bubble_swaps(&self) -> Vec<usize> {
        let mut labels = self.0.clone();
        let mut swaps = Vec::new();
        let n = labels.len();
        for pass in 0..n {
            let mut moved = false;
            for k in 0..n.saturating_sub(pass + 1) {
                if labels[k] > labels[k + 1] {
                    labels.swap(k, k + 1);
                    swaps.push(k);
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        swaps
    }

    /// Every reduced word for this permutation: each word swaps one
    /// adjacent descent at a time until the labels are sorted.
    pub fn reduced_words(&self) -> Vec<Vec<usize>> {
        fn go(labels: &mut Vec<usize>, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let descents: Vec<usize> = (0..labels.len().saturating_sub(1)).filter(|&k| labels[k] > labels[k + 1]).collect();
            if descents.is_empty() {
                out.push(word.clone());
                return;
            }
            for k in descents {
                labels.swap(k, k + 1);
                word.push(k);
                go(labels, word, out);
                word.pop();
                labels.swap(k, k + 1);
            }
        }
        let mut out = Vec::new();
        go(&mut self.0.clone(), &mut Vec::new(), &mut out);
        out
    }

    /// The permutation realized by a word of adjacent transpositions.
    pub fn from_swaps(n: usize, swaps: &[usize]) -> Self {
        // Track where each original position currently sits.
        let mut at: Vec<usize> = (0..n).collect();
        for &k in swaps {
            at.swap(k, k + 1);
        }
        // at[p] = original index now at position p.
        let mut images = vec![0; n];
        for (p, &i) in at.iter().enumerate() {
            images[i] = p;
        }
        Self(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().map(|i| (i + 1).to_string()).join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bubble_and_reduced_words_realize_the_permutation() {
        for n in 0..=4 {
            for p in Permutation::all(n) {
                assert_eq!(Permutation::from_swaps(n, &p.bubble_swaps()), p);
                for w in p.reduced_words() {
                    assert_eq!(Permutation::from_swaps(n, &w), p);
                }
            }
        }
    }

    #[test]
    fn longest_element_of_s4_has_sixteen_reduced_words() {
        let w0 = Permutation::from_images(vec![3, 2, 1, 0]).unwrap();
        assert_eq!(w0.reduced_words().len(), 16);
    }

    #[test]
    fn apply_respects_composition() {
        let items = ['a', 'b', 'c', 'd'];
        for p in Permutation::all(4) {
            for q in Permutation::all(4) {
                assert_eq!(q.apply(&p.apply(&items)), q.after(&p).apply(&items));
            }
            assert!(p.after(&p.inverse()).is_identity());
        }
    }

    #[test]
    fn sorting_orders_keys() {
        let keys = [5, 1, 3];
        let s = Permutation::sorting(&keys);
        assert_eq!(s.apply(&keys), vec![1, 3, 5]);
        assert!(Permutation::from_images(vec![0, 0]).is_none());
    }
}
