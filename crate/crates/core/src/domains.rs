//! Connecting domains, the periodic lattice and bounded enumeration of
//! positive domains.
//!
//! Sign convention: a domain `D` from `x` to `y` satisfies
//! `delta(boundary(D) restricted to alpha) = y - x` as 0-chains on the
//! intersection points. The beta part then has boundary `x - y`.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::diagram::{CurveKind, HeegaardDiagram, ValidatedDiagram};
use crate::exactla::{
    ceil_rat, floor_rat, integer_ray, lp_optimize, rat_from_int, smith_form, Constraint, HermiteSystem, Int, IntMatrix,
    LpOutcome, Rational, Relation, SmithForm,
};
use crate::generators::Generator;
use crate::measures::{chern_pairing, maslov_index};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    /// The positive domains of the requested index form an unbounded set;
    /// `witness` is a nonnegative periodic direction with zero Chern pairing.
    #[error(
        "positive domains are unbounded along the periodic direction {witness:?}; the diagram is not weakly admissible"
    )]
    Unbounded { witness: Vec<Int> },
}

/// An integer 2-chain over the regions, with its endpoint generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Domain {
    coefficients: Vec<Int>,
    from: Generator,
    to: Generator,
}

impl Domain {
    pub fn new(coefficients: Vec<Int>, from: Generator, to: Generator) -> Self {
        Domain { coefficients, from, to }
    }

    pub fn coefficients(&self) -> &[Int] {
        &self.coefficients
    }

    pub fn from(&self) -> &Generator {
        &self.from
    }

    pub fn to(&self) -> &Generator {
        &self.to
    }

    pub fn nz(&self, d: &HeegaardDiagram) -> &Int {
        &self.coefficients[d.basepoint_region()]
    }

    pub fn is_positive(&self) -> bool {
        self.coefficients.iter().all(|c| !c.is_negative())
    }

    /// Concatenation: `self` from x to y followed by `next` from y to w.
    pub fn compose(&self, next: &Domain) -> Option<Domain> {
        if self.to != next.from {
            return None;
        }
        Some(Domain {
            coefficients: self
                .coefficients
                .iter()
                .zip(&next.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
            from: self.from.clone(),
            to: next.to.clone(),
        })
    }

    /// Adds `k` copies of the fundamental class.
    pub fn plus_sigma(&self, k: i64) -> Domain {
        let k = Int::from(k);
        Domain {
            coefficients: self.coefficients.iter().map(|c| c + &k).collect(),
            from: self.from.clone(),
            to: self.to.clone(),
        }
    }

    /// Adds a periodic vector (an element of `pi_2(to, to)`).
    pub fn plus_periodic(&self, p: &[Int]) -> Domain {
        Domain {
            coefficients: self.coefficients.iter().zip(p).map(|(a, b)| a + b).collect(),
            from: self.from.clone(),
            to: self.to.clone(),
        }
    }
}

/// Boundary maps from region vectors to 0-chains on points, through the
/// alpha arcs and (mirror) the beta arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySystem {
    pub alpha: IntMatrix,
    pub beta: IntMatrix,
}

pub fn boundary_system(d: &HeegaardDiagram) -> BoundarySystem {
    let (v, r) = (d.num_points(), d.num_regions());
    let mut alpha = IntMatrix::zeros(v, r);
    let mut beta = IntMatrix::zeros(v, r);
    for (ri, region) in d.regions().iter().enumerate() {
        for oa in region.boundary.iter().flatten() {
            let (s, e) = d.arc_endpoints(oa.arc);
            let (tail, head) = if oa.forward { (s, e) } else { (e, s) };
            let m = match oa.arc.kind {
                CurveKind::Alpha => &mut alpha,
                CurveKind::Beta => &mut beta,
            };
            m[(head, ri)] += Int::one();
            m[(tail, ri)] -= Int::one();
        }
    }
    BoundarySystem { alpha, beta }
}

/// Periodic domains with `n_z = 0`, plus the fundamental class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicLattice {
    pub basis: Vec<Vec<Int>>,
    pub sigma: Vec<Int>,
}

impl PeriodicLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `sum t_j basis_j`.
    pub fn combine(&self, t: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.sigma.len()];
        for (tj, b) in t.iter().zip(&self.basis) {
            if tj.is_zero() {
                continue;
            }
            for (o, bi) in out.iter_mut().zip(b) {
                *o += tj * bi;
            }
        }
        out
    }
}

fn chain(d: &HeegaardDiagram, x: &Generator, sign: i64) -> Vec<Int> {
    let mut v = vec![Int::zero(); d.num_points()];
    for &p in x.points() {
        v[p] += Int::from(sign);
    }
    v
}

fn rational_combination(basis: &[Vec<Int>], region: usize, fixed: &[Int]) -> (Vec<Rational>, Rational) {
    // coefficients on the free variables and the constant from the fixed ones
    let k = basis.len();
    let f = fixed.len();
    let coeffs = (f..k).map(|j| rat_from_int(&basis[j][region])).collect();
    let constant: Int = (0..f).map(|j| &fixed[j] * &basis[j][region]).sum();
    (coeffs, rat_from_int(&constant))
}

/// Looks for a nonzero real vector in the span of `basis` that is
/// componentwise nonnegative, optionally restricted to the hyperplane
/// `pairing . t = 0`. Returns its primitive integer representative.
pub(crate) fn nonnegative_direction(basis: &[Vec<Int>], dim: usize, pairing: Option<&[Int]>) -> Option<Vec<Int>> {
    let k = basis.len();
    if k == 0 {
        return None;
    }
    let row = |i: usize| -> Vec<Rational> { basis.iter().map(|b| rat_from_int(&b[i])).collect() };
    let mut constraints: Vec<Constraint> = (0..dim)
        .map(|i| Constraint::new(row(i), Relation::Ge, Rational::zero()))
        .collect();
    let total: Vec<Rational> = (0..k).map(|j| rat_from_int(&basis[j].iter().sum::<Int>())).collect();
    constraints.push(Constraint::new(total.clone(), Relation::Le, Rational::one()));
    if let Some(c) = pairing {
        constraints.push(Constraint::new(
            c.iter().map(rat_from_int).collect(),
            Relation::Eq,
            Rational::zero(),
        ));
    }
    match lp_optimize(&total, &constraints) {
        LpOutcome::Optimal { value, point } if value.is_positive() => {
            let t = integer_ray(&point);
            let mut v = vec![Int::zero(); dim];
            for (tj, b) in t.iter().zip(basis) {
                for (o, bi) in v.iter_mut().zip(b) {
                    *o += tj * bi;
                }
            }
            Some(crate::exactla::primitive(&v))
        }
        LpOutcome::Optimal { .. } => None,
        other => unreachable!("cone LP is feasible and bounded, got {other:?}"),
    }
}

/// Solver for domains on one validated diagram; caches the factored
/// boundary system.
pub struct DomainSolver<'d> {
    d: &'d ValidatedDiagram,
    boundary: BoundarySystem,
    system: HermiteSystem,
    lattice: PeriodicLattice,
    smith: OnceLock<SmithForm>,
}

impl<'d> DomainSolver<'d> {
    pub fn new(d: &'d ValidatedDiagram) -> Self {
        let boundary = boundary_system(d);
        let system = HermiteSystem::new(&boundary.alpha);
        let mut with_z = boundary.alpha.clone();
        let mut z_row = vec![Int::zero(); d.num_regions()];
        z_row[d.basepoint_region()] = Int::one();
        with_z.push_row(z_row);
        let basis = HermiteSystem::new(&with_z).kernel().to_vec();
        let lattice = PeriodicLattice {
            basis,
            sigma: d.fundamental_class(),
        };
        DomainSolver {
            d,
            boundary,
            system,
            lattice,
            smith: OnceLock::new(),
        }
    }

    pub fn diagram(&self) -> &'d ValidatedDiagram {
        self.d
    }

    pub fn boundary(&self) -> &BoundarySystem {
        &self.boundary
    }

    pub fn periodic_lattice(&self) -> &PeriodicLattice {
        &self.lattice
    }

    /// Rank of the full kernel of the boundary map (periodic lattice plus [Sigma]).
    pub fn kernel_rank(&self) -> usize {
        self.system.kernel().len()
    }

    /// Asserts the boundary conditions of a domain in both curve families.
    pub fn check(&self, domain: &Domain) -> bool {
        let y_minus_x: Vec<Int> = chain(self.d, domain.to(), 1)
            .into_iter()
            .zip(chain(self.d, domain.from(), -1))
            .map(|(a, b)| a + b)
            .collect();
        let x_minus_y: Vec<Int> = y_minus_x.iter().map(|v| -v).collect();
        self.boundary.alpha.mul_vec(domain.coefficients()) == y_minus_x
            && self.boundary.beta.mul_vec(domain.coefficients()) == x_minus_y
    }

    /// A domain from `x` to `y` normalized to `n_z = 0`, if one exists.
    pub fn connecting_domain(&self, x: &Generator, y: &Generator) -> Option<Domain> {
        let rhs: Vec<Int> = chain(self.d, y, 1)
            .into_iter()
            .zip(chain(self.d, x, -1))
            .map(|(a, b)| a + b)
            .collect();
        let mut coeffs = self.system.solve(&rhs)?;
        let nz = coeffs[self.d.basepoint_region()].clone();
        if !nz.is_zero() {
            for c in coeffs.iter_mut() {
                *c -= &nz;
            }
        }
        let domain = Domain::new(coeffs, x.clone(), y.clone());
        assert!(
            self.check(&domain),
            "connecting domain violates the beta mirror condition"
        );
        Some(domain)
    }

    /// Explicit obstruction class of `y - x` in the cokernel of the alpha
    /// boundary map. Zero exactly when a connecting domain exists.
    pub fn epsilon(&self, x: &Generator, y: &Generator) -> Vec<Int> {
        let smith = self.smith.get_or_init(|| smith_form(&self.boundary.alpha));
        let rhs: Vec<Int> = chain(self.d, y, 1)
            .into_iter()
            .zip(chain(self.d, x, -1))
            .map(|(a, b)| a + b)
            .collect();
        smith.cokernel_coordinates(&rhs)
    }

    /// Class of `x` in the cokernel of the alpha boundary map. Two generators
    /// share a key iff a domain connects them.
    pub fn spinc_key(&self, x: &Generator) -> Vec<Int> {
        let smith = self.smith.get_or_init(|| smith_form(&self.boundary.alpha));
        smith.cokernel_coordinates(&chain(self.d, x, 1))
    }

    /// Pairings `<c_1(s_x), B_j>` of the lattice basis.
    pub fn pairings(&self, x: &Generator) -> Vec<Int> {
        self.lattice
            .basis
            .iter()
            .map(|b| chern_pairing(self.d, x, b).expect("periodic vectors have integral pairing"))
            .collect()
    }

    /// Nonnegative nonzero periodic direction with zero pairing against
    /// `c_1(s_x)`, if the Spin^c class of `x` admits one.
    pub fn recession_direction(&self, x: &Generator) -> Option<Vec<Int>> {
        let c = self.pairings(x);
        nonnegative_direction(&self.lattice.basis, self.d.num_regions(), Some(&c))
    }

    /// Nonnegative nonzero periodic direction, if any exists.
    pub fn nonnegative_periodic(&self) -> Option<Vec<Int>> {
        nonnegative_direction(&self.lattice.basis, self.d.num_regions(), None)
    }

    /// Every domain from `x` to `y` with all coefficients nonnegative,
    /// `n_z = nz` and Maslov index `target`, sorted by coefficients.
    ///
    /// Fails with [`DomainError::Unbounded`] whenever the positivity region
    /// `D0 + span(periodic lattice) >= 0` has a recession direction, that is
    /// whenever some nonzero periodic domain is nonnegative.
    pub fn positive_domains(
        &self,
        x: &Generator,
        y: &Generator,
        target: i64,
        nz: i64,
    ) -> Result<Vec<Domain>, DomainError> {
        if let Some(witness) = self.nonnegative_periodic() {
            return Err(DomainError::Unbounded { witness });
        }
        self.positive_domains_in_class(x, y, target, nz)
    }

    /// As [`Self::positive_domains`], but only fails when the index-constrained
    /// set is itself infinite.
    ///
    /// Candidates are `D0 + nz [Sigma] + sum t_j B_j`. The index pins
    /// `sum t_j <c_1, B_j>`, so the search region is a polytope in
    /// `t`-space; it is bounded unless a nonnegative periodic direction with
    /// zero pairing exists. Each coordinate is swept between exact LP bounds
    /// given the earlier coordinates.
    pub fn positive_domains_in_class(
        &self,
        x: &Generator,
        y: &Generator,
        target: i64,
        nz: i64,
    ) -> Result<Vec<Domain>, DomainError> {
        if let Some(witness) = self.recession_direction(x) {
            return Err(DomainError::Unbounded { witness });
        }
        if nz < 0 {
            return Ok(Vec::new());
        }
        let Some(d0) = self.connecting_domain(x, y) else {
            return Ok(Vec::new());
        };
        let base = d0.plus_sigma(nz);
        let base_index = maslov_index(self.d, &base).expect("connecting domains have integral index");
        let pairing = self.pairings(x);
        let remaining = Int::from(target) - base_index;

        let mut found = Vec::new();
        let mut fixed = Vec::new();
        self.sweep(&base, &pairing, &remaining, &mut fixed, &mut found);
        let mut out: Vec<Domain> = found
            .into_iter()
            .map(|t| {
                let p = self.lattice.combine(&t);
                base.plus_periodic(&p)
            })
            .collect();
        out.sort_by(|a, b| a.coefficients().cmp(b.coefficients()));
        for dom in &out {
            assert!(self.check(dom), "enumerated domain violates boundary conditions");
            debug_assert_eq!(maslov_index(self.d, dom).ok(), Some(Int::from(target)));
        }
        Ok(out)
    }

    fn bounds(&self, base: &Domain, pairing: &[Int], remaining: &Int, fixed: &[Int]) -> Option<(Int, Int)> {
        let k = self.lattice.rank();
        let f = fixed.len();
        let mut constraints = Vec::new();
        for i in 0..self.d.num_regions() {
            let (coeffs, constant) = rational_combination(&self.lattice.basis, i, fixed);
            // base_i + constant + coeffs . t >= 0
            constraints.push(Constraint::new(
                coeffs,
                Relation::Ge,
                -(rat_from_int(&base.coefficients()[i]) + constant),
            ));
        }
        let fixed_pair: Int = (0..f).map(|j| &fixed[j] * &pairing[j]).sum();
        constraints.push(Constraint::new(
            (f..k).map(|j| rat_from_int(&pairing[j])).collect(),
            Relation::Eq,
            rat_from_int(&(remaining - fixed_pair)),
        ));
        let mut objective = vec![Rational::zero(); k - f];
        objective[0] = Rational::one();
        let hi = match lp_optimize(&objective, &constraints) {
            LpOutcome::Optimal { value, .. } => floor_rat(&value),
            LpOutcome::Infeasible => return None,
            LpOutcome::Unbounded => unreachable!("recession check rules out unbounded coordinates"),
        };
        objective[0] = -Rational::one();
        let lo = match lp_optimize(&objective, &constraints) {
            LpOutcome::Optimal { value, .. } => ceil_rat(&(-value)),
            LpOutcome::Infeasible => return None,
            LpOutcome::Unbounded => unreachable!("recession check rules out unbounded coordinates"),
        };
        Some((lo, hi))
    }

    fn sweep(&self, base: &Domain, pairing: &[Int], remaining: &Int, fixed: &mut Vec<Int>, out: &mut Vec<Vec<Int>>) {
        let k = self.lattice.rank();
        if fixed.len() == k {
            let p = self.lattice.combine(fixed);
            let pair: Int = fixed.iter().zip(pairing).map(|(a, b)| a * b).sum();
            let positive = base.coefficients().iter().zip(&p).all(|(a, b)| !(a + b).is_negative());
            if positive && &pair == remaining {
                out.push(fixed.clone());
            }
            return;
        }
        let Some((lo, hi)) = self.bounds(base, pairing, remaining, fixed) else {
            return;
        };
        let mut t = lo;
        while t <= hi {
            fixed.push(t.clone());
            self.sweep(base, pairing, remaining, fixed, out);
            fixed.pop();
            t += 1;
        }
    }
}

pub fn connecting_domain(d: &ValidatedDiagram, x: &Generator, y: &Generator) -> Option<Domain> {
    DomainSolver::new(d).connecting_domain(x, y)
}

pub fn periodic_lattice(d: &ValidatedDiagram) -> PeriodicLattice {
    DomainSolver::new(d).periodic_lattice().clone()
}

pub fn positive_domains(
    d: &ValidatedDiagram,
    x: &Generator,
    y: &Generator,
    target: i64,
    nz: i64,
) -> Result<Vec<Domain>, DomainError> {
    DomainSolver::new(d).positive_domains(x, y, target, nz)
}
