use serde::Serialize;

use crate::graph::Convention;
use crate::zmod::ClassStructure;

/// Symmetrized quotient of the adjacency matrix over the gcd classes.
///
/// Every block of the adjacency matrix is constant, so the class partition
/// is equitable and this k×k matrix carries the whole spectrum on
/// class-constant vectors. Under [`Convention::Simple`] each clique class of
/// size s additionally contributes the eigenvalue −1 with multiplicity s − 1;
/// see [`ReducedClassMatrix::extra_minus_one`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReducedClassMatrix {
    pub order: usize,
    pub entries: Vec<f64>,
    pub class_sizes: Vec<usize>,
    /// Multiplicity of −1 outside the quotient (clique classes without loops).
    pub extra_minus_one: usize,
}

impl ReducedClassMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }
}

pub fn reduced_class_matrix(cs: &ClassStructure, convention: Convention) -> ReducedClassMatrix {
    let classes = cs.classes();
    let k = classes.len();
    let sizes = cs.sizes();
    let mut entries = vec![0.0; k * k];
    let mut extra_minus_one = 0;
    for i in 0..k {
        let si = sizes[i] as f64;
        entries[i * k + i] = match (classes[i].looped, convention) {
            (false, _) => 0.0,
            (true, Convention::PaperLoops) => si,
            (true, Convention::Simple) => {
                extra_minus_one += sizes[i] - 1;
                si - 1.0
            }
        };
        for j in (i + 1)..k {
            if cs.joined(i, j) {
                let v = (si * sizes[j] as f64).sqrt();
                entries[i * k + j] = v;
                entries[j * k + i] = v;
            }
        }
    }
    ReducedClassMatrix {
        order: k,
        entries,
        class_sizes: sizes,
        extra_minus_one,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::{class_partition, factorize};

    fn reduced(n: u64, c: Convention) -> ReducedClassMatrix {
        reduced_class_matrix(&class_partition(&factorize(n).unwrap()).unwrap(), c)
    }

    #[test]
    fn p_cubed_quotient() {
        for p in [2u64, 3, 5, 7] {
            let r = reduced(p * p * p, Convention::PaperLoops);
            let (a, b) = ((p * p - p) as f64, (p - 1) as f64);
            assert_eq!(r.order, 2);
            assert_eq!(r.get(0, 0), 0.0);
            assert_eq!(r.get(0, 1), (a * b).sqrt());
            assert_eq!(r.get(1, 1), b);
            // trace b and determinant −ab reproduce λ² − (p−1)λ − (p²−p)(p−1)
            let det = r.get(0, 0) * r.get(1, 1) - r.get(0, 1) * r.get(1, 0);
            assert!((det + a * b).abs() < 1e-9);
        }
    }

    #[test]
    fn z12_quotient() {
        let r = reduced(12, Convention::PaperLoops);
        let s2 = 2f64.sqrt();
        let want = [
            [0.0, 0.0, s2, 0.0],
            [0.0, 0.0, 0.0, 2.0],
            [s2, 0.0, 1.0, s2],
            [0.0, 2.0, s2, 0.0],
        ];
        for (i, row) in want.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                assert!((r.get(i, j) - w).abs() < 1e-15, "({i},{j})");
            }
        }
        assert_eq!(r.extra_minus_one, 0);
    }

    #[test]
    fn single_looped_vertex() {
        let r = reduced(4, Convention::PaperLoops);
        assert_eq!(r.entries, vec![1.0]);
        let s = reduced(4, Convention::Simple);
        assert_eq!(s.entries, vec![0.0]);
    }

    #[test]
    fn simple_clique_records_minus_one() {
        // n = 27: class {9, 18} is a clique of size 2
        let r = reduced(27, Convention::Simple);
        assert_eq!(r.get(1, 1), 1.0);
        assert_eq!(r.extra_minus_one, 1);
    }
}
