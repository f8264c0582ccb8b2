//! Construction of universal bimagic squares from linear digit functionals.
//!
//! Index each row and column of an order-N square (N = p^m, p prime) by a
//! vector of m base-p digits; a cell is then a 2m-vector over GF(p). Give
//! every digit position of the entries its own linear-plus-constant form
//! over that cell space. If the stacked linear parts are invertible, the
//! cells enumerate every digit string exactly once (completeness). Each
//! checked line family is a coset family of a "direction" subspace of the
//! cell space, so per-line digit statistics reduce to algebra:
//!
//! * balance — a form's restriction to a direction is nonzero — makes every
//!   digit appear equally often in every line of that family, forcing the
//!   line sum S1;
//! * the pair condition — two forms' restrictions are linearly independent —
//!   makes digit pairs jointly uniform, forcing the squared sum S2.
//!
//! Orders 16 and 9 admit systems satisfying both conditions on every
//! direction. Order 8 provably does not: over GF(2)³ there are only seven
//! nonzero restrictions to go around, and demanding six pairwise-distinct
//! ones on rows, columns, *and* the diagonal direction at once forces the
//! six forms into a rank-3 subspace, destroying invertibility (exhaustive
//! check over all candidate systems; see the tests). The way out is that
//! the two diagonals are single lines, not coset families: a pair of forms
//! with *equal* diagonal restrictions contributes a joint digit-pair count
//! of 4 or 0 (constant-term dependent) instead of the uniform 2, and two
//! such pairs at equal decimal weight 10^(i+j) with opposite contributions
//! cancel exactly. The search therefore enforces the pair condition on
//! rows, columns, and blocks only, and accepts a leaf when some assignment
//! of constant terms makes both diagonal lines hit S1 and S2 exactly —
//! compensation instead of uniformity.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digitspace::{
    compare_published, sum_targets, Alphabet, Entry, ErratumRecord, SumTargets,
};
use crate::error::{Error, Result};
use crate::grid::{BlockShape, Grid, LineKind};

/// Nodes (accepted form placements) per restart before reshuffling.
pub const NODE_BUDGET: u64 = 10_000_000;
/// Number of reshuffled restarts before giving up.
pub const RESTARTS: u32 = 8;

/// One digit position's functional: digit = coeffs·cell + constant (mod p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    /// Coefficients over the 2m-dimensional cell space.
    pub coeffs: Vec<u8>,
    /// Constant term; only ever nonzero where compensation requires it.
    pub constant: u8,
}

/// A complete functional system for one order: `forms[k]` produces digit
/// position k (most significant first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitFunctionalSystem {
    pub order: usize,
    pub prime: u8,
    pub width: usize,
    pub forms: Vec<LinearForm>,
}

/// A line family's direction: the subspace of cell-vector differences
/// within lines of that family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Direction {
    pub kind: LineKind,
    /// Basis vectors of the 2m-dimensional cell space.
    pub basis: Vec<Vec<u8>>,
}

/// Per-order geometry.
struct Geometry {
    prime: u8,
    m: usize,
    order: usize,
    width: usize,
    alphabet: Alphabet,
}

fn geometry(order: usize) -> Result<Geometry> {
    match order {
        8 => Ok(Geometry {
            prime: 2,
            m: 3,
            order,
            width: 6,
            alphabet: Alphabet::binary(),
        }),
        16 => Ok(Geometry {
            prime: 2,
            m: 4,
            order,
            width: 8,
            alphabet: Alphabet::binary(),
        }),
        9 => Ok(Geometry {
            prime: 3,
            m: 2,
            order,
            width: 4,
            alphabet: Alphabet::ternary(),
        }),
        _ => Err(Error::UnsupportedOrder { order }),
    }
}

/// Exact base-p logarithm, if any.
fn exact_log(p: usize, mut n: usize) -> Option<usize> {
    let mut log = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        log += 1;
    }
    Some(log)
}

/// The base-p digits of `index`, most significant first, as m components.
fn index_vector(p: u8, m: usize, index: usize) -> Vec<u8> {
    let mut v = vec![0u8; m];
    let mut i = index;
    for slot in v.iter_mut().rev() {
        *slot = (i % p as usize) as u8;
        i /= p as usize;
    }
    v
}

fn unit(dim: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0u8; dim];
    v[i] = 1;
    v
}

fn dot(p: u8, a: &[u8], b: &[u8]) -> u8 {
    let mut acc = 0u32;
    for (&x, &y) in a.iter().zip(b) {
        acc += u32::from(x) * u32::from(y);
    }
    (acc % u32::from(p)) as u8
}

/// Direction subspaces for every line family of an order: rows vary over
/// column digits, columns over row digits, the main diagonal over equal
/// pairs (t,t), the anti-diagonal over (t,−t), and blocks over the
/// low-order row and column digits that vary inside one block. Every line
/// group of the grid is a coset of its family's direction.
pub fn direction_catalog(order: usize, block: BlockShape) -> Result<Vec<Direction>> {
    let geo = geometry(order)?;
    let (p, m) = (geo.prime, geo.m);
    let dim = 2 * m;
    let rows = Direction {
        kind: LineKind::Rows,
        basis: (0..m).map(|j| unit(dim, m + j)).collect(),
    };
    let columns = Direction {
        kind: LineKind::Columns,
        basis: (0..m).map(|j| unit(dim, j)).collect(),
    };
    let main_diag = Direction {
        kind: LineKind::MainDiagonal,
        basis: (0..m)
            .map(|j| {
                let mut v = unit(dim, j);
                v[m + j] = 1;
                v
            })
            .collect(),
    };
    let anti_diag = Direction {
        kind: LineKind::AntiDiagonal,
        basis: (0..m)
            .map(|j| {
                let mut v = unit(dim, j);
                v[m + j] = p - 1;
                v
            })
            .collect(),
    };
    let block_row_digits = exact_log(p as usize, block.rows)
        .ok_or(Error::InvalidBlockShape {
            order,
            rows: block.rows,
            cols: block.cols,
        })?;
    let block_col_digits = exact_log(p as usize, block.cols)
        .ok_or(Error::InvalidBlockShape {
            order,
            rows: block.rows,
            cols: block.cols,
        })?;
    let mut block_basis = Vec::new();
    for i in 0..block_row_digits {
        block_basis.push(unit(dim, m - block_row_digits + i));
    }
    for i in 0..block_col_digits {
        block_basis.push(unit(dim, dim - block_col_digits + i));
    }
    let blocks = Direction {
        kind: LineKind::Blocks,
        basis: block_basis,
    };
    Ok(vec![rows, columns, main_diag, anti_diag, blocks])
}

/// Restriction of a form's linear part to a direction: its dot products
/// with the direction's basis vectors.
fn restriction(p: u8, coeffs: &[u8], direction: &Direction) -> Vec<u8> {
    direction.basis.iter().map(|b| dot(p, coeffs, b)).collect()
}

fn is_zero(v: &[u8]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Two nonzero restriction vectors are dependent over GF(p) iff one is a
/// scalar multiple of the other.
fn dependent(p: u8, u: &[u8], v: &[u8]) -> bool {
    (1..p).any(|lambda| {
        u.iter()
            .zip(v)
            .all(|(&a, &b)| a == (u16::from(b) * u16::from(lambda) % u16::from(p)) as u8)
    })
}

/// Incremental Gaussian elimination over GF(p): reduces `v` against the
/// current echelon basis; a zero result means `v` was dependent.
fn reduce(p: u8, basis: &[Vec<u8>], v: &[u8]) -> Vec<u8> {
    let mut v = v.to_vec();
    for b in basis {
        let lead = b
            .iter()
            .position(|&x| x != 0)
            .expect("echelon basis vectors are nonzero");
        if v[lead] != 0 {
            // scale so v[lead] cancels: v -= (v[lead]/b[lead]) * b
            let inv = inverse(p, b[lead]);
            let factor = (u16::from(v[lead]) * u16::from(inv) % u16::from(p)) as u8;
            for (vi, &bi) in v.iter_mut().zip(b) {
                let sub = u16::from(factor) * u16::from(bi) % u16::from(p);
                *vi = ((u16::from(*vi) + u16::from(p) - sub) % u16::from(p)) as u8;
            }
        }
    }
    v
}

/// Multiplicative inverse in GF(p) for the tiny primes used here.
fn inverse(p: u8, x: u8) -> u8 {
    debug_assert!(x != 0 && x < p);
    match (p, x) {
        (2, 1) => 1,
        (3, 1) => 1,
        (3, 2) => 2, // 2·2 = 4 ≡ 1 (mod 3)
        _ => (1..p).find(|&y| (u16::from(x) * u16::from(y)) % u16::from(p) == 1)
            .expect("nonzero elements of a prime field are invertible"),
    }
}

struct SearchSpace {
    geo: Geometry,
    targets: SumTargets,
    /// Candidate coefficient vectors, balance-filtered.
    pool: Vec<Vec<u8>>,
    /// Restrictions of each pool member to each direction.
    restrictions: Vec<Vec<Vec<u8>>>,
    /// Indices into `directions` where the pair condition is enforced
    /// during the walk.
    paired: Vec<usize>,
    /// Whether the leaf must solve the diagonal compensation instead.
    compensate_diagonals: bool,
}

fn search_space(order: usize, block: BlockShape) -> Result<SearchSpace> {
    let geo = geometry(order)?;
    let targets = sum_targets(&geo.alphabet, geo.width, order)?;
    let directions = direction_catalog(order, block)?;
    let dim = 2 * geo.m;
    let p = geo.prime;
    let total = (p as usize).pow(dim as u32);
    let mut pool = Vec::new();
    let mut restrictions = Vec::new();
    for code in 1..total {
        let coeffs = index_vector(p, dim, code);
        let rs: Vec<Vec<u8>> = directions
            .iter()
            .map(|d| restriction(p, &coeffs, d))
            .collect();
        if rs.iter().all(|r| !is_zero(r)) {
            pool.push(coeffs);
            restrictions.push(rs);
        }
    }
    // Order 8 is the compensated case; at the other orders the full pair
    // condition is satisfiable and gives uniformity on every line.
    let compensate_diagonals = order == 8;
    let paired = directions
        .iter()
        .enumerate()
        .filter(|(_, d)| {
            !(compensate_diagonals
                && matches!(d.kind, LineKind::MainDiagonal | LineKind::AntiDiagonal))
        })
        .map(|(i, _)| i)
        .collect();
    Ok(SearchSpace {
        geo,
        targets,
        pool,
        restrictions,
        paired,
        compensate_diagonals,
    })
}

struct Walk<'a> {
    space: &'a SearchSpace,
    order: Vec<usize>, // shuffled indices into the pool
    nodes: u64,
    budget: u64,
    exhausted: bool,
    chosen: Vec<usize>,
    echelon: Vec<Vec<u8>>,
    used: Vec<Vec<Vec<u8>>>, // per paired direction, restrictions in use
}

impl<'a> Walk<'a> {
    fn run(&mut self) -> Option<Vec<LinearForm>> {
        if self.chosen.len() == self.space.geo.width {
            return self.close_leaf();
        }
        let p = self.space.geo.prime;
        for oi in 0..self.order.len() {
            let candidate = self.order[oi];
            if self.chosen.contains(&candidate) {
                continue;
            }
            let rs = &self.space.restrictions[candidate];
            let pair_ok = self.space.paired.iter().enumerate().all(|(ui, &di)| {
                self.used[ui]
                    .iter()
                    .all(|used| !dependent(p, used, &rs[di]))
            });
            if !pair_ok {
                continue;
            }
            let reduced = reduce(p, &self.echelon, &self.space.pool[candidate]);
            if is_zero(&reduced) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return None;
            }
            self.chosen.push(candidate);
            self.echelon.push(reduced);
            for (ui, &di) in self.space.paired.iter().enumerate() {
                self.used[ui].push(rs[di].clone());
            }
            let found = self.run();
            self.chosen.pop();
            self.echelon.pop();
            for used in &mut self.used {
                used.pop();
            }
            if found.is_some() || self.exhausted {
                return found;
            }
        }
        None
    }

    /// All linear parts are placed; settle the constant terms.
    fn close_leaf(&mut self) -> Option<Vec<LinearForm>> {
        let geo = &self.space.geo;
        let forms = |constants: &[u8]| -> Vec<LinearForm> {
            self.chosen
                .iter()
                .zip(constants)
                .map(|(&i, &c)| LinearForm {
                    coeffs: self.space.pool[i].clone(),
                    constant: c,
                })
                .collect()
        };
        if !self.space.compensate_diagonals {
            return Some(forms(&vec![0u8; geo.width]));
        }
        // Compensated case: find constant terms making both diagonal lines
        // sum exactly to S1/S2. Scanned in ascending binary order so the
        // outcome is deterministic.
        let p = geo.prime as usize;
        let combos = p.pow(geo.width as u32);
        for code in 0..combos {
            let constants = index_vector(geo.prime, geo.width, code);
            let candidate = forms(&constants);
            if diagonals_exact(geo, &candidate, &self.space.targets) {
                return Some(candidate);
            }
        }
        None
    }
}

/// Directly evaluates the two diagonal lines of the would-be grid and
/// compares them against the forced constants.
fn diagonals_exact(geo: &Geometry, forms: &[LinearForm], targets: &SumTargets) -> bool {
    let n = geo.order;
    for anti in [false, true] {
        let mut s1: u128 = 0;
        let mut s2: u128 = 0;
        for i in 0..n {
            let col = if anti { n - 1 - i } else { i };
            let mut cell = index_vector(geo.prime, geo.m, i);
            cell.extend(index_vector(geo.prime, geo.m, col));
            let mut value: u128 = 0;
            for form in forms {
                let digit = (dot(geo.prime, &form.coeffs, &cell) + form.constant) % geo.prime;
                value = value * 10 + u128::from(digit);
            }
            s1 += value;
            s2 += value * value;
        }
        if s1 != u128::from(targets.s1) || s2 != targets.s2 {
            return false;
        }
    }
    true
}

/// Searches for a functional system for the order, using its default block
/// tiling. Deterministic for a fixed seed: the candidate list is shuffled
/// by a seeded generator, the walk is depth-first with backtracking, and
/// each restart reshuffles after `NODE_BUDGET` accepted placements.
pub fn search_functionals(order: usize, seed: u64) -> Result<DigitFunctionalSystem> {
    let block = BlockShape::default_for(order).ok_or(Error::UnsupportedOrder { order })?;
    search_functionals_with(order, seed, block)
}

/// As [`search_functionals`], but against an explicit block tiling.
pub fn search_functionals_with(
    order: usize,
    seed: u64,
    block: BlockShape,
) -> Result<DigitFunctionalSystem> {
    let space = search_space(order, block)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order_ix: Vec<usize> = (0..space.pool.len()).collect();
    for _restart in 0..RESTARTS {
        order_ix.shuffle(&mut rng);
        let mut walk = Walk {
            space: &space,
            order: order_ix.clone(),
            nodes: 0,
            budget: NODE_BUDGET,
            exhausted: false,
            chosen: Vec::with_capacity(space.geo.width),
            echelon: Vec::with_capacity(space.geo.width),
            used: vec![Vec::with_capacity(space.geo.width); space.paired.len()],
        };
        if let Some(forms) = walk.run() {
            return Ok(DigitFunctionalSystem {
                order,
                prime: space.geo.prime,
                width: space.geo.width,
                forms,
            });
        }
        // Either the budget tripped or the whole shuffled tree came up
        // empty; in both cases the next restart reshuffles and tries again.
    }
    Err(Error::SearchExhausted {
        order,
        budget: NODE_BUDGET,
        restarts: RESTARTS,
    })
}

/// Evaluates the system at every cell to build the grid. Completeness
/// follows from the invertibility of the stacked linear parts.
pub fn assemble_grid(system: &DigitFunctionalSystem) -> Result<Grid> {
    let geo = geometry(system.order)?;
    let n = geo.order;
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            let mut cell = index_vector(geo.prime, geo.m, r);
            cell.extend(index_vector(geo.prime, geo.m, c));
            let digits: Vec<u8> = system
                .forms
                .iter()
                .map(|form| (dot(geo.prime, &form.coeffs, &cell) + form.constant) % geo.prime)
                .collect();
            row.push(Entry::from_digits(&digits)?);
        }
        rows.push(row);
    }
    Grid::new(n, geo.alphabet, geo.width, rows)
}

/// Searches and assembles in one step, with the order's default blocks.
pub fn generate(order: usize, seed: u64) -> Result<Grid> {
    let system = search_functionals(order, seed)?;
    assemble_grid(&system)
}

/// Searches and assembles against an explicit block tiling.
pub fn generate_with(order: usize, seed: u64, block: BlockShape) -> Result<Grid> {
    let system = search_functionals_with(order, seed, block)?;
    assemble_grid(&system)
}

/// Both routes to the sum constants, which must agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetsCrosscheck {
    pub order: usize,
    /// Brute-force summation over the complete set.
    pub brute: SumTargets,
    /// Digit-position formula: per-position totals × repunit powers plus
    /// pairwise cross terms × mixed powers.
    pub formula: SumTargets,
    /// Comparison of the agreed value against every published print.
    pub records: Vec<ErratumRecord>,
}

/// Computes S1/S2 two independent ways and cross-checks them; a mismatch is
/// an arithmetic bug, not a property of the input, and fails hard.
pub fn closed_form_targets_crosscheck(order: usize) -> Result<TargetsCrosscheck> {
    let geo = geometry(order)?;
    let brute = sum_targets(&geo.alphabet, geo.width, order)?;
    let a = geo.alphabet.len() as u128;
    let w = geo.width as u32;
    let n = order as u128;
    let digit_sum: u128 = geo.alphabet.digits().iter().map(|&d| u128::from(d)).sum();
    let digit_sq_sum: u128 = geo
        .alphabet
        .digits()
        .iter()
        .map(|&d| u128::from(d) * u128::from(d))
        .sum();
    // Every digit position runs through the alphabet |A|^(w-1) times over
    // the complete set; every ordered position pair takes each digit pair
    // |A|^(w-2) times.
    let per_position = a.pow(w - 1) * digit_sum;
    let per_position_sq = a.pow(w - 1) * digit_sq_sum;
    let per_pair = a.pow(w - 2) * digit_sum * digit_sum;
    let repunit: u128 = (0..w).map(|i| 10u128.pow(i)).sum();
    let even_powers: u128 = (0..w).map(|i| 10u128.pow(2 * i)).sum();
    let mixed_powers: u128 = (0..w)
        .flat_map(|i| (i + 1..w).map(move |j| 10u128.pow(i + j)))
        .sum();
    let s1_total = per_position * repunit;
    let s2_total = per_position_sq * even_powers + 2 * per_pair * mixed_powers;
    if !s1_total.is_multiple_of(n) || !s2_total.is_multiple_of(n) {
        return Err(Error::CrosscheckMismatch {
            order,
            brute: brute.s2,
            formula: s2_total,
        });
    }
    let formula = SumTargets {
        s1: (s1_total / n) as u64,
        s2: s2_total / n,
    };
    if formula != brute {
        let (b, f) = if formula.s1 as u128 != brute.s1 as u128 {
            (u128::from(brute.s1), u128::from(formula.s1))
        } else {
            (brute.s2, formula.s2)
        };
        return Err(Error::CrosscheckMismatch {
            order,
            brute: b,
            formula: f,
        });
    }
    Ok(TargetsCrosscheck {
        order,
        brute,
        formula,
        records: compare_published(order, &brute),
    })
}
