//! Lexicographic k-subset enumeration shared by the scenario verifiers and
//! exact searches. A lending-style stepper avoids per-subset allocation in
//! hot loops.

/// Steps through all `k`-element subsets of `0..n` in lexicographic order,
/// exposing each as a sorted index slice.
pub(crate) struct Combinations {
    n: usize,
    k: usize,
    idx: Vec<usize>,
    state: State,
}

enum State {
    Fresh,
    Running,
    Done,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Combinations {
        Combinations {
            n,
            k,
            idx: (0..k).collect(),
            state: if k <= n { State::Fresh } else { State::Done },
        }
    }

    /// The next subset, or `None` when exhausted. The returned slice borrows
    /// the stepper and is invalidated by the following call.
    pub(crate) fn next(&mut self) -> Option<&[usize]> {
        match self.state {
            State::Fresh => {
                self.state = State::Running;
                Some(&self.idx)
            }
            State::Running => {
                // Find the rightmost index that can still move up.
                let mut i = self.k;
                loop {
                    if i == 0 {
                        self.state = State::Done;
                        return None;
                    }
                    i -= 1;
                    if self.idx[i] != i + self.n - self.k {
                        break;
                    }
                }
                self.idx[i] += 1;
                for j in i + 1..self.k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                Some(&self.idx)
            }
            State::Done => None,
        }
    }
}
