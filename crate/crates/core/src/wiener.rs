//! Shortest-path distances and the Wiener index of Γ[Z_n].
//!
//! All arithmetic here is exact integer arithmetic.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula;
use crate::graph::AdjacencyMatrix;
use crate::zmod::{is_prime, ClassStructure, Form};
use crate::Verdict;

const UNREACHABLE: u32 = u32::MAX;

/// All-pairs hop distances over the loop-free edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    order: usize,
    dist: Vec<u32>,
    diameter: u32,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    /// `None` when `j` is unreachable from `i`.
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        match self.dist[i * self.order + j] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// Largest finite distance.
    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn unreachable_pairs(&self) -> u64 {
        let mut count = 0;
        for i in 0..self.order {
            for j in (i + 1)..self.order {
                if self.dist[i * self.order + j] == UNREACHABLE {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Breadth-first search from every vertex. Loops are ignored.
pub fn bfs_distances(a: &AdjacencyMatrix) -> DistanceMatrix {
    let order = a.order();
    let neighbours: Vec<Vec<usize>> = (0..order)
        .map(|i| {
            a.row(i)
                .iter()
                .enumerate()
                .filter(|&(j, &e)| e == 1 && j != i)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();

    let mut dist = vec![UNREACHABLE; order * order];
    let mut diameter = 0;
    let mut queue = VecDeque::with_capacity(order);
    for source in 0..order {
        let row = &mut dist[source * order..(source + 1) * order];
        row[source] = 0;
        queue.clear();
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let next = row[v] + 1;
            for &w in &neighbours[v] {
                if row[w] == UNREACHABLE {
                    row[w] = next;
                    diameter = diameter.max(next);
                    queue.push_back(w);
                }
            }
        }
    }
    DistanceMatrix {
        order,
        dist,
        diameter,
    }
}

/// Sum of distances over unordered vertex pairs.
pub fn wiener_index(d: &DistanceMatrix) -> Result<u64> {
    let unreachable_pairs = d.unreachable_pairs();
    if unreachable_pairs > 0 {
        return Err(Error::Disconnected { unreachable_pairs });
    }
    let mut total = 0u64;
    for i in 0..d.order {
        for j in (i + 1)..d.order {
            total += d.dist[i * d.order + j] as u64;
        }
    }
    Ok(total)
}

/// `(p−1)(2p³−3p−2)/2` for n = p³.
pub fn wiener_closed_p3(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as i128;
    let product = (p - 1) * (2 * p * p * p - 3 * p - 2);
    // one of p−1 and 2p³−3p−2 is always even
    debug_assert_eq!(product % 2, 0);
    Ok((product / 2) as u64)
}

/// The printed n = p²q Wiener expression
/// `½[p²(2p²−4p−1) + p(4p²q+2pq²−8pq−2q+5) + 2]`, evaluated exactly.
pub fn wiener_paper_p2q(p: u64, q: u64) -> Result<i128> {
    if p == q {
        return Err(Error::EqualPrimes(p));
    }
    for v in [p, q] {
        if !is_prime(v) {
            return Err(Error::NotPrime(v));
        }
    }
    let (p, q) = (p as i128, q as i128);
    let bracket = p * p * (2 * p * p - 4 * p - 1)
        + p * (4 * p * p * q + 2 * p * q * q - 8 * p * q - 2 * q + 5)
        + 2;
    if bracket % 2 != 0 {
        return Err(Error::NonIntegral { bracket });
    }
    Ok(bracket / 2)
}

/// Common distance between members of each pair of classes.
///
/// `entries[i][i]` is the distance between distinct members of class i and is
/// `None` for singleton classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDistanceTable {
    pub divisors: Vec<u64>,
    pub entries: Vec<Vec<Option<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassDistanceEntry {
    pub first: u64,
    pub second: u64,
    pub distance: Option<u32>,
}

impl ClassDistanceTable {
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.entries[i][j]
    }

    /// Upper-triangular entries keyed by class divisor.
    pub fn rows(&self) -> Vec<ClassDistanceEntry> {
        let k = self.divisors.len();
        let mut rows = Vec::with_capacity(k * (k + 1) / 2);
        for i in 0..k {
            for j in i..k {
                rows.push(ClassDistanceEntry {
                    first: self.divisors[i],
                    second: self.divisors[j],
                    distance: self.entries[i][j],
                });
            }
        }
        rows
    }
}

impl Serialize for ClassDistanceTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

/// Build the class distance table from a BFS of `a`.
pub fn class_distance_table(
    cs: &ClassStructure,
    a: &AdjacencyMatrix,
) -> Result<ClassDistanceTable> {
    class_distance_table_from(cs, &bfs_distances(a))
}

/// Build the class distance table from precomputed distances, checking that
/// every pair of members of a class pair sits at the same distance.
pub fn class_distance_table_from(
    cs: &ClassStructure,
    d: &DistanceMatrix,
) -> Result<ClassDistanceTable> {
    let unreachable_pairs = d.unreachable_pairs();
    if unreachable_pairs > 0 {
        return Err(Error::Disconnected { unreachable_pairs });
    }
    let classes = cs.classes();
    let offsets = cs.offsets();
    let k = classes.len();
    let mut entries = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i..k {
            let mut common: Option<u32> = None;
            for x in offsets[i]..offsets[i] + classes[i].size() {
                for y in offsets[j]..offsets[j] + classes[j].size() {
                    if x == y {
                        continue;
                    }
                    let v = d.dist[x * d.order + y];
                    match common {
                        None => common = Some(v),
                        Some(c) if c != v => {
                            return Err(Error::NonUniformClassDistance {
                                first: classes[i].divisor,
                                second: classes[j].divisor,
                            })
                        }
                        _ => {}
                    }
                }
            }
            entries[i][j] = common;
            entries[j][i] = common;
        }
    }
    Ok(ClassDistanceTable {
        divisors: classes.iter().map(|c| c.divisor).collect(),
        entries,
    })
}

/// `Σ_{i<j} |i||j|·d(i,j) + Σ_i C(|i|,2)·d(i,i)`.
pub fn wiener_from_class_table(cs: &ClassStructure, table: &ClassDistanceTable) -> Result<u64> {
    let sizes = cs.sizes();
    let k = sizes.len();
    let missing = |i: usize, j: usize| Error::IncompleteTable {
        first: cs.classes()[i].divisor,
        second: cs.classes()[j].divisor,
    };
    if table.entries.len() != k {
        return Err(missing(0, 0));
    }
    let mut total = 0u64;
    for (i, &si) in sizes.iter().enumerate() {
        let si = si as u64;
        if si >= 2 {
            let d = table.get(i, i).ok_or_else(|| missing(i, i))?;
            total += si * (si - 1) / 2 * d as u64;
        }
        for (j, &sj) in sizes.iter().enumerate().skip(i + 1) {
            let d = table.get(i, j).ok_or_else(|| missing(i, j))?;
            total += si * sj as u64 * d as u64;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WienerFormula {
    pub formula_id: &'static str,
    /// `None` when the formula could not be evaluated to an integer.
    pub value: Option<i128>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WienerReport {
    pub n: u64,
    /// `None` when the graph is disconnected.
    pub brute_force: Option<u64>,
    pub unreachable_pairs: u64,
    pub diameter: u32,
    pub closed_forms: Vec<WienerFormula>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_distance_table: Option<ClassDistanceTable>,
}

fn verdict_against(
    formula_id: &'static str,
    value: Result<i128>,
    brute: Option<u64>,
) -> WienerFormula {
    match value {
        Ok(v) => WienerFormula {
            formula_id,
            value: Some(v),
            verdict: Verdict::from_bool(brute.map(i128::from) == Some(v)),
            note: None,
        },
        Err(e) => WienerFormula {
            formula_id,
            value: None,
            verdict: Verdict::Mismatch,
            note: Some(e.to_string()),
        },
    }
}

/// BFS Wiener index alongside every applicable closed form and the class
/// decomposition.
pub fn wiener_report(cs: &ClassStructure, a: &AdjacencyMatrix) -> Result<WienerReport> {
    let d = bfs_distances(a);
    let unreachable_pairs = d.unreachable_pairs();
    let brute_force = wiener_index(&d).ok();
    let mut closed_forms = Vec::new();
    match cs.modulus().form() {
        Form::PCubed { p } => closed_forms.push(verdict_against(
            formula::WIENER_P3,
            wiener_closed_p3(p).map(i128::from),
            brute_force,
        )),
        Form::PSquaredQ { p, q } => closed_forms.push(verdict_against(
            formula::WIENER_P2Q_PRINTED,
            wiener_paper_p2q(p, q),
            brute_force,
        )),
        Form::General => {}
    }
    let class_distance_table = if brute_force.is_some() {
        let table = class_distance_table_from(cs, &d)?;
        closed_forms.push(verdict_against(
            formula::CLASS_TABLE,
            wiener_from_class_table(cs, &table).map(i128::from),
            brute_force,
        ));
        Some(table)
    } else {
        None
    };
    Ok(WienerReport {
        n: cs.n(),
        brute_force,
        unreachable_pairs,
        diameter: d.diameter(),
        closed_forms,
        class_distance_table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_adjacency, Convention, DEFAULT_DENSE_CAP};
    use crate::zmod::{class_partition, factorize};

    fn setup(n: u64) -> (ClassStructure, AdjacencyMatrix) {
        let cs = class_partition(&factorize(n).unwrap()).unwrap();
        let a = build_adjacency(&cs, Convention::PaperLoops, DEFAULT_DENSE_CAP).unwrap();
        (cs, a)
    }

    fn index_of(a: &AdjacencyMatrix, label: u64) -> usize {
        a.labels().iter().position(|&l| l == label).unwrap()
    }

    #[test]
    fn z8_distances() {
        let (_, a) = setup(8);
        let d = bfs_distances(&a);
        let at = |x, y| d.get(index_of(&a, x), index_of(&a, y));
        assert_eq!(at(2, 4), Some(1));
        assert_eq!(at(4, 6), Some(1));
        assert_eq!(at(2, 6), Some(2));
        assert_eq!(d.diameter(), 2);
        assert_eq!(wiener_index(&d).unwrap(), 4);
    }

    #[test]
    fn z27_distances() {
        let (_, a) = setup(27);
        let d = bfs_distances(&a);
        for i in 0..8 {
            for j in 0..8 {
                let want = if i == j {
                    0
                } else if i < 6 && j < 6 {
                    2
                } else {
                    1
                };
                assert_eq!(d.get(i, j), Some(want));
            }
        }
        assert_eq!(wiener_index(&d).unwrap(), 43);
    }

    #[test]
    fn z4_single_vertex() {
        let (_, a) = setup(4);
        let d = bfs_distances(&a);
        assert_eq!(d.order(), 1);
        assert_eq!(d.get(0, 0), Some(0));
        assert_eq!(d.diameter(), 0);
        assert_eq!(wiener_index(&d).unwrap(), 0);
    }

    #[test]
    fn z12_wiener_and_table() {
        let (cs, a) = setup(12);
        assert_eq!(wiener_index(&bfs_distances(&a)).unwrap(), 38);
        let t = class_distance_table(&cs, &a).unwrap();
        // classes A=2, B=3, C=6, D=4
        let (ac, bd, cd) = (t.get(0, 2), t.get(1, 3), t.get(2, 3));
        assert_eq!((ac, bd, cd), (Some(1), Some(1), Some(1)));
        assert_eq!(t.get(0, 0), Some(2));
        assert_eq!(t.get(1, 1), Some(2));
        assert_eq!(t.get(3, 3), Some(2));
        assert_eq!(t.get(0, 3), Some(2));
        assert_eq!(t.get(1, 2), Some(2));
        assert_eq!(t.get(0, 1), Some(3));
        assert_eq!(t.get(2, 2), None);
        assert_eq!(wiener_from_class_table(&cs, &t).unwrap(), 38);
    }

    #[test]
    fn z27_and_z8_tables() {
        let (cs, a) = setup(27);
        let t = class_distance_table(&cs, &a).unwrap();
        assert_eq!(
            t.entries,
            vec![vec![Some(2), Some(1)], vec![Some(1), Some(1)]]
        );
        assert_eq!(wiener_from_class_table(&cs, &t).unwrap(), 43);
        let (cs, a) = setup(8);
        let t = class_distance_table(&cs, &a).unwrap();
        assert_eq!(wiener_from_class_table(&cs, &t).unwrap(), 4);
    }

    #[test]
    fn incomplete_table_is_rejected() {
        let (cs, a) = setup(12);
        let mut t = class_distance_table(&cs, &a).unwrap();
        t.entries[0][1] = None;
        assert_eq!(
            wiener_from_class_table(&cs, &t),
            Err(Error::IncompleteTable {
                first: 2,
                second: 3
            })
        );
    }

    #[test]
    fn closed_forms() {
        assert_eq!(wiener_closed_p3(2).unwrap(), 4);
        assert_eq!(wiener_closed_p3(3).unwrap(), 43);
        assert_eq!(wiener_closed_p3(5).unwrap(), 466);
        assert_eq!(wiener_closed_p3(6), Err(Error::NotPrime(6)));
        assert_eq!(wiener_paper_p2q(2, 3).unwrap(), 34);
        assert_eq!(wiener_paper_p2q(3, 2).unwrap(), 97);
        assert_eq!(wiener_paper_p2q(5, 5), Err(Error::EqualPrimes(5)));
    }

    #[test]
    fn printed_p2q_formula_disagrees_on_z12() {
        let (cs, a) = setup(12);
        let r = wiener_report(&cs, &a).unwrap();
        assert_eq!(r.brute_force, Some(38));
        let printed = &r.closed_forms[0];
        assert_eq!(printed.formula_id, formula::WIENER_P2Q_PRINTED);
        assert_eq!(printed.value, Some(34));
        assert_eq!(printed.verdict, Verdict::Mismatch);
        assert_eq!(r.closed_forms[1].verdict, Verdict::Match);
        assert_eq!(r.diameter, 3);
    }

    #[test]
    fn disconnected_matrix_reports_unreachable_pairs() {
        let (cs, mut a) = setup(8);
        // cut vertex 4 off from both others
        a.set_symmetric(0, 2, 0);
        a.set_symmetric(1, 2, 0);
        let d = bfs_distances(&a);
        assert_eq!(
            wiener_index(&d),
            Err(Error::Disconnected {
                unreachable_pairs: 3
            })
        );
        let r = wiener_report(&cs, &a).unwrap();
        assert_eq!(r.brute_force, None);
        assert_eq!(r.unreachable_pairs, 3);
        assert!(r.class_distance_table.is_none());
    }

    #[test]
    fn non_uniform_distances_are_structure_violations() {
        let (cs, mut a) = setup(27);
        // join 3 and 6 only; the first class is no longer at uniform distance
        a.set_symmetric(0, 1, 1);
        assert_eq!(
            class_distance_table(&cs, &a),
            Err(Error::NonUniformClassDistance {
                first: 3,
                second: 3
            })
        );
    }
}
