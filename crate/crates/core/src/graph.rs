//! Adjacency matrices of Γ[Z_n] in canonical class order, block-form
//! validation and DOT/CSV export.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::zmod::{gcd, mul_mod, ClassStructure, FactoredModulus, Form};

/// Largest vertex count built densely unless a caller overrides it.
pub const DEFAULT_DENSE_CAP: usize = 5000;

/// How the diagonal of the adjacency matrix is filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Diagonal entry 1 at every vertex with x² ≡ 0 (mod n).
    #[default]
    PaperLoops,
    /// Loop-free simple graph.
    Simple,
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" | "paper_loops" => Ok(Convention::PaperLoops),
            "simple" => Ok(Convention::Simple),
            other => Err(format!("unknown loop convention `{other}`")),
        }
    }
}

/// `x·y ≡ 0 (mod n)` for two nonzero zero divisors of Z_n.
pub fn adjacency_oracle(x: u64, y: u64, m: &FactoredModulus) -> Result<bool> {
    let n = m.n();
    for v in [x, y] {
        if v == 0 || v >= n || gcd(v, n) == 1 {
            return Err(Error::NotZeroDivisor { value: v, n });
        }
    }
    Ok(mul_mod(x, y, n) == 0)
}

/// Dense symmetric 0/1 adjacency matrix over canonically ordered vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: u64,
    order: usize,
    entries: Vec<u8>,
    labels: Vec<u64>,
    convention: Convention,
}

impl AdjacencyMatrix {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    /// Overwrite one entry (and its mirror).
    pub fn set_symmetric(&mut self, i: usize, j: usize, value: u8) {
        self.entries[i * self.order + j] = value;
        self.entries[j * self.order + i] = value;
    }

    pub fn trace(&self) -> usize {
        (0..self.order).map(|i| self.get(i, i) as usize).sum()
    }

    /// Number of unit entries, which is also the squared Frobenius norm.
    pub fn ones(&self) -> usize {
        self.entries.iter().map(|&e| e as usize).sum()
    }

    /// Degree of vertex `i` ignoring any loop.
    pub fn degree(&self, i: usize) -> usize {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|&(j, &e)| j != i && e == 1)
            .count()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&e| e as f64).collect()
    }
}

/// Build the adjacency matrix, refusing graphs above `dense_cap` vertices.
pub fn build_adjacency(
    cs: &ClassStructure,
    convention: Convention,
    dense_cap: usize,
) -> Result<AdjacencyMatrix> {
    let order = cs.total_vertices();
    if order > dense_cap {
        return Err(Error::DenseCapExceeded {
            vertices: order,
            cap: dense_cap,
        });
    }
    let n = cs.n();
    let labels = cs.labels();
    let mut entries = vec![0u8; order * order];
    for i in 0..order {
        for j in i..order {
            let hit = if i == j {
                convention == Convention::PaperLoops && mul_mod(labels[i], labels[i], n) == 0
            } else {
                mul_mod(labels[i], labels[j], n) == 0
            };
            if hit {
                entries[i * order + j] = 1;
                entries[j * order + i] = 1;
            }
        }
    }
    Ok(AdjacencyMatrix {
        n,
        order,
        entries,
        labels,
        convention,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    Zero,
    AllOnes,
}

/// Expected constant-block pattern of an adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpec {
    pub class_sizes: Vec<usize>,
    /// `blocks[i][j]` for the off-diagonal entries of block (i, j).
    pub blocks: Vec<Vec<BlockKind>>,
    /// Diagonal entries of each diagonal block.
    pub diagonal: Vec<BlockKind>,
}

impl BlockSpec {
    /// The two-class pattern for n = p³: zero block on the first class,
    /// ones everywhere else.
    pub fn p_cubed(p: u64, convention: Convention) -> Self {
        use BlockKind::*;
        let (a, b) = ((p * p - p) as usize, (p - 1) as usize);
        let looped = if convention == Convention::PaperLoops {
            AllOnes
        } else {
            Zero
        };
        BlockSpec {
            class_sizes: vec![a, b],
            blocks: vec![vec![Zero, AllOnes], vec![AllOnes, AllOnes]],
            diagonal: vec![Zero, looped],
        }
    }

    /// The four-class pattern for n = p²q with ones exactly on
    /// (A,C), (B,D), (C,C), (C,D) and their transposes.
    pub fn p_squared_q(p: u64, q: u64, convention: Convention) -> Self {
        use BlockKind::*;
        let sizes = [(p - 1) * (q - 1), p * (p - 1), p - 1, q - 1];
        let looped = if convention == Convention::PaperLoops {
            AllOnes
        } else {
            Zero
        };
        let mut blocks = vec![vec![Zero; 4]; 4];
        for (i, j) in [(0, 2), (1, 3), (2, 2), (2, 3)] {
            blocks[i][j] = AllOnes;
            blocks[j][i] = AllOnes;
        }
        BlockSpec {
            class_sizes: sizes.iter().map(|&s| s as usize).collect(),
            blocks,
            diagonal: vec![Zero, Zero, looped, Zero],
        }
    }

    pub fn for_form(form: Form, convention: Convention) -> Option<Self> {
        match form {
            Form::PCubed { p } => Some(Self::p_cubed(p, convention)),
            Form::PSquaredQ { p, q } => Some(Self::p_squared_q(p, q, convention)),
            Form::General => None,
        }
    }
}

/// True iff every block of `a` is uniformly the kind `spec` prescribes.
pub fn check_block_form(a: &AdjacencyMatrix, spec: &BlockSpec) -> Result<bool> {
    let expected: usize = spec.class_sizes.iter().sum();
    if expected != a.order() {
        return Err(Error::BlockSpecMismatch {
            expected,
            actual: a.order(),
        });
    }
    let mut class_of = Vec::with_capacity(expected);
    for (c, &s) in spec.class_sizes.iter().enumerate() {
        class_of.extend(std::iter::repeat_n(c, s));
    }
    let value = |k: BlockKind| u8::from(k == BlockKind::AllOnes);
    for i in 0..a.order() {
        for j in 0..a.order() {
            let (ci, cj) = (class_of[i], class_of[j]);
            let want = if i == j {
                value(spec.diagonal[ci])
            } else {
                value(spec.blocks[ci][cj])
            };
            if a.get(i, j) != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "csv" => Ok(ExportFormat::Csv),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Render the matrix as Graphviz DOT or as CSV (header of labels, then
/// one row of 0/1 digits per vertex).
pub fn export(a: &AdjacencyMatrix, format: ExportFormat) -> Vec<u8> {
    let mut out = String::new();
    match format {
        ExportFormat::Csv => {
            let header: Vec<String> = a.labels.iter().map(u64::to_string).collect();
            out.push_str(&header.join(","));
            out.push('\n');
            for i in 0..a.order {
                let row: Vec<&str> = a
                    .row(i)
                    .iter()
                    .map(|&e| if e == 1 { "1" } else { "0" })
                    .collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        ExportFormat::Dot => {
            let _ = writeln!(out, "graph Z{} {{", a.n);
            for label in &a.labels {
                let _ = writeln!(out, "  {label};");
            }
            for i in 0..a.order {
                let from = if a.convention == Convention::PaperLoops {
                    i
                } else {
                    i + 1
                };
                for j in from..a.order {
                    if a.get(i, j) == 1 {
                        let _ = writeln!(out, "  {} -- {};", a.labels[i], a.labels[j]);
                    }
                }
            }
            out.push_str("}\n");
        }
    }
    out.into_bytes()
}
