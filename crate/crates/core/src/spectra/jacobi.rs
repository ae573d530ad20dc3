use crate::error::{Error, Result};

/// Sweep cap for [`jacobi_eigenvalues`].
pub const MAX_SWEEPS: usize = 100;

/// Default relative off-diagonal tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-13;

const SYMMETRY_TOLERANCE: f64 = 1e-12;

fn off_diagonal_norm(a: &[f64], order: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..order {
        for j in (i + 1)..order {
            let v = a[i * order + j];
            sum += 2.0 * v * v;
        }
    }
    sum.sqrt()
}

/// Pairings of a round-robin tournament on `m` (even) players: `m - 1`
/// rounds, each pairing every index exactly once.
fn round_robin(m: usize) -> Vec<Vec<(usize, usize)>> {
    let mut ring: Vec<usize> = (0..m).collect();
    let mut rounds = Vec::with_capacity(m - 1);
    for _ in 0..m - 1 {
        let round = (0..m / 2)
            .map(|i| {
                let (x, y) = (ring[i], ring[m - 1 - i]);
                (x.min(y), x.max(y))
            })
            .collect();
        rounds.push(round);
        // keep ring[0] fixed, rotate the rest
        let last = ring.pop().unwrap_or(0);
        ring.insert(1, last);
    }
    rounds
}

struct Rotation {
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    /// Diagonal entries after the rotation.
    app: f64,
    aqq: f64,
}

fn rotation(a: &[f64], n: usize, p: usize, q: usize) -> Option<Rotation> {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return None;
    }
    let (app, aqq) = (a[p * n + p], a[q * n + q]);
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta < 0.0 { -1.0 } else { 1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    Some(Rotation {
        p,
        q,
        c,
        s: t * c,
        app: app - t * apq,
        aqq: aqq + t * apq,
    })
}

/// Eigenvalues of a dense symmetric matrix (row-major, `order × order`) by
/// cyclic Jacobi rotations, returned in ascending order.
///
/// Each sweep visits every off-diagonal pair once in round-robin order, so
/// the rotations of one round act on disjoint index pairs and are applied
/// together: first to whole rows, then to the columns of each row.
/// Iteration stops once the off-diagonal Frobenius norm drops to `tol` times
/// the Frobenius norm of the input.
pub fn jacobi_eigenvalues(matrix: &[f64], order: usize, tol: f64) -> Result<Vec<f64>> {
    assert_eq!(matrix.len(), order * order, "matrix is not {order}x{order}");
    assert!(order >= 1, "empty matrix");
    for i in 0..order {
        for j in (i + 1)..order {
            let (x, y) = (matrix[i * order + j], matrix[j * order + i]);
            if (x - y).abs() > SYMMETRY_TOLERANCE * (1.0 + x.abs().max(y.abs())) {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }

    let n = order;
    let mut a = matrix.to_vec();
    let norm = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let target = tol * norm;
    let rounds = round_robin(n + n % 2);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= target {
            converged = true;
            break;
        }
        for round in &rounds {
            let rotations: Vec<Rotation> = round
                .iter()
                .filter(|&&(_, q)| q < n)
                .filter_map(|&(p, q)| rotation(&a, n, p, q))
                .collect();
            if rotations.is_empty() {
                continue;
            }
            // Jᵀ A: combine row pairs
            for r in &rotations {
                let (head, tail) = a.split_at_mut(r.q * n);
                let row_p = &mut head[r.p * n..(r.p + 1) * n];
                let row_q = &mut tail[..n];
                for (g, h) in row_p.iter_mut().zip(row_q.iter_mut()) {
                    let (gv, hv) = (*g, *h);
                    *g = r.c * gv - r.s * hv;
                    *h = r.s * gv + r.c * hv;
                }
            }
            // (Jᵀ A) J: combine column pairs, one row at a time
            for row in a.chunks_exact_mut(n) {
                for r in &rotations {
                    let (gv, hv) = (row[r.p], row[r.q]);
                    row[r.p] = r.c * gv - r.s * hv;
                    row[r.q] = r.s * gv + r.c * hv;
                }
            }
            for r in &rotations {
                a[r.p * n + r.p] = r.app;
                a[r.q * n + r.q] = r.aqq;
                a[r.p * n + r.q] = 0.0;
                a[r.q * n + r.p] = 0.0;
            }
        }
    }
    if !converged && off_diagonal_norm(&a, n) > target {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}
