//! Root systems of the finite type, rank 1 and 2 families.

use super::LieError;

/// A root as integer coordinates over the simple roots.
pub type Root = Vec<i64>;

/// Validated Cartan data with the positive-root closure.
#[derive(Clone, Debug)]
pub struct RootSystem {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    sym: Vec<i64>,
    pos: Vec<Root>,
}

impl RootSystem {
    /// Builds from a Cartan matrix, checking it is one of finite type.
    pub fn new(cartan: &[Vec<i64>]) -> Result<Self, LieError> {
        let rank = cartan.len();
        let bad = |m: String| LieError::InvalidCartanMatrix(m);
        if rank == 0 || rank > 2 {
            return Err(bad(format!("rank {rank} unsupported (must be 1 or 2)")));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != rank {
                return Err(bad("matrix is not square".into()));
            }
            if row[i] != 2 {
                return Err(bad(format!("diagonal entry a[{i}][{i}] = {} (must be 2)", row[i])));
            }
            for (j, &a) in row.iter().enumerate() {
                if i != j && a > 0 {
                    return Err(bad(format!("off-diagonal entry a[{i}][{j}] = {a} (must be <= 0)")));
                }
            }
        }
        if rank == 2 {
            let (p, q) = (cartan[0][1], cartan[1][0]);
            if (p == 0) != (q == 0) {
                return Err(bad("off-diagonal entries must vanish together".into()));
            }
            if p * q >= 4 {
                return Err(bad(format!("a12*a21 = {} (affine or indefinite type)", p * q)));
            }
        }
        let sym = symmetrizers(cartan, rank)?;
        let cartan: Vec<Vec<i64>> = cartan.to_vec();
        let pos = positive_closure(&cartan, rank);
        Ok(RootSystem { rank, cartan, sym, pos })
    }

    pub fn by_name(name: &str) -> Result<Self, LieError> {
        let cartan: Vec<Vec<i64>> = match name {
            "A1" => vec![vec![2]],
            "A1xA1" => vec![vec![2, 0], vec![0, 2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "B2" => vec![vec![2, -1], vec![-2, 2]],
            "G2" => vec![vec![2, -1], vec![-3, 2]],
            other => {
                return Err(LieError::InvalidCartanMatrix(format!("unknown algebra name {other:?}")))
            }
        };
        Self::new(&cartan)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Symmetrizers `d_i = (alpha_i, alpha_i)/2`, normalized so short roots
    /// have squared length 2.
    pub fn d(&self) -> &[i64] {
        &self.sym
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive(&self) -> &[Root] {
        &self.pos
    }

    pub fn num_positive(&self) -> usize {
        self.pos.len()
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.pos.iter().position(|p| p == r)
    }

    pub fn is_positive_root(&self, r: &[i64]) -> bool {
        self.root_index(r).is_some()
    }

    pub fn height(r: &[i64]) -> i64 {
        r.iter().sum()
    }

    /// Inner product `(a, b)` for weights written over the simple roots.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * self.sym[i] * self.cartan[i][j] * b[j];
            }
        }
        s
    }

    /// Pairing `<b, a_i^v> = 2(a_i, b)/(a_i, a_i)` of a weight with a coroot.
    pub fn coroot_pairing(&self, i: usize, b: &[i64]) -> i64 {
        (0..self.rank).map(|j| self.cartan[i][j] * b[j]).sum()
    }
}

fn symmetrizers(cartan: &[Vec<i64>], rank: usize) -> Result<Vec<i64>, LieError> {
    // d_i a_ij = d_j a_ji with minimal positive integers, short roots length 2.
    if rank == 1 {
        return Ok(vec![1]);
    }
    let (a12, a21) = (cartan[0][1], cartan[1][0]);
    let d = if a12 == 0 {
        vec![1, 1]
    } else {
        // d1/d2 = a21/a12.
        let (n, m) = (a21.abs(), a12.abs());
        let g = gcd(n, m);
        vec![n / g, m / g]
    };
    for i in 0..rank {
        for j in 0..rank {
            if d[i] * cartan[i][j] != d[j] * cartan[j][i] {
                return Err(LieError::InvalidCartanMatrix("matrix is not symmetrizable".into()));
            }
        }
    }
    Ok(d)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn positive_closure(cartan: &[Vec<i64>], rank: usize) -> Vec<Root> {
    let mut roots: Vec<Root> = Vec::new();
    for i in 0..rank {
        let mut r = vec![0i64; rank];
        r[i] = 1;
        roots.push(r);
    }
    // Height-by-height closure via root strings: alpha + alpha_i is a root
    // iff p - <alpha, alpha_i^v> > 0 with p the depth of the string below.
    let mut height = 1;
    loop {
        let mut added = false;
        let snapshot = roots.clone();
        for alpha in snapshot.iter().filter(|r| RootSystem::height(r) == height) {
            for i in 0..rank {
                let pairing: i64 = (0..rank).map(|j| cartan[i][j] * alpha[j]).sum();
                let mut p = 0i64;
                let mut down = alpha.clone();
                loop {
                    down[i] -= 1;
                    let nonneg = down.iter().all(|&c| c >= 0);
                    if nonneg && (roots.contains(&down) || down.iter().all(|&c| c == 0)) {
                        if down.iter().all(|&c| c == 0) {
                            break;
                        }
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = alpha.clone();
                    up[i] += 1;
                    if !roots.contains(&up) {
                        roots.push(up);
                        added = true;
                    }
                }
            }
        }
        if !added && height as usize > roots.iter().map(|r| RootSystem::height(r)).max().unwrap_or(0) as usize {
            break;
        }
        height += 1;
        assert!(height < 32, "root closure failed to terminate");
    }
    // Simple root i must land at index i; heights tie only at height 1.
    roots.sort_by_key(|r| (RootSystem::height(r), std::cmp::Reverse(r.clone())));
    roots
}
