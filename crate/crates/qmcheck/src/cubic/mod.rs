//! The pencil of nine-nodal cubic threefolds
//!
//! ```text
//! X(alpha):  x1 x2 x3 + alpha x4 x5 x6 = 0,   x1 + ... + x6 = 0
//! ```
//!
//! inside P^5, together with its singular loci, node classification,
//! contained planes and lines, plane systems, the symmetric-coordinate
//! degeneration, and the moduli invariant b = alpha + 1/alpha.
//!
//! All computation is exact, over Q, Q(alpha), or a prime field for the
//! independent brute-force oracle.

pub mod field;
pub mod poly;

use field::{ro, rz, CoeffField, QAlpha};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use poly::{Exp, SparsePoly, NVARS};
use serde::Serialize;

pub type QQ = BigRational;
pub type Poly<K> = SparsePoly<K>;
pub type Point<K> = [K; 6];

/// The index blocks of the two completely reducible cubics.
pub const BLOCK_A: [usize; 3] = [0, 1, 2];
pub const BLOCK_B: [usize; 3] = [3, 4, 5];

/// Defining polynomials (F, L) of the family member at the given alpha.
pub fn family_member<K: CoeffField>(alpha: &K) -> Result<(Poly<K>, Poly<K>), String> {
    if alpha.is_zero() {
        return Err("the family is defined for nonzero alpha".into());
    }
    let cube = |idx: [usize; 3]| -> Poly<K> {
        Poly::var(idx[0]).mul(&Poly::var(idx[1])).mul(&Poly::var(idx[2]))
    };
    let f = cube(BLOCK_A).add(&cube(BLOCK_B).scale(alpha));
    let mut l = Poly::zero();
    for i in 0..NVARS {
        l = l.add(&Poly::var(i));
    }
    Ok((f, l))
}

/// The symbolic family member over Q(alpha).
pub fn family_member_symbolic() -> (Poly<QAlpha>, Poly<QAlpha>) {
    family_member(&QAlpha::alpha()).expect("alpha is a unit in Q(alpha)")
}

fn is_zero_point<K: CoeffField>(p: &Point<K>) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Projective equality: proportional coordinate vectors.
pub fn same_projective_point<K: CoeffField>(p: &Point<K>, q: &Point<K>) -> bool {
    // p ~ q iff all 2x2 minors vanish.
    for i in 0..6 {
        for j in i + 1..6 {
            let m = p[i].mul(&q[j]).sub(&p[j].mul(&q[i]));
            if !m.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Singularity test for the intersection X(alpha) = {F = 0} cap {L = 0}:
/// the point must satisfy both equations and the 2x6 Jacobian must have
/// rank <= 1.
pub fn is_singular_point<K: CoeffField>(alpha: &K, p: &Point<K>) -> Result<bool, String> {
    if is_zero_point(p) {
        return Err("the zero vector is not a projective point".into());
    }
    let (f, l) = family_member(alpha)?;
    let pv: Vec<K> = p.to_vec();
    if !f.eval(&pv).is_zero() || !l.eval(&pv).is_zero() {
        return Ok(false);
    }
    let gf: Vec<K> = f.gradient().iter().map(|g| g.eval(&pv)).collect();
    let gl: Vec<K> = l.gradient().iter().map(|g| g.eval(&pv)).collect();
    for i in 0..6 {
        for j in i + 1..6 {
            let minor = gf[i].mul(&gl[j]).sub(&gf[j].mul(&gl[i]));
            if !minor.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The marked node with +1 in slot a and -1 in slot b.
pub fn node_point<K: CoeffField>(a: usize, b: usize) -> Point<K> {
    assert!(BLOCK_A.contains(&a) && BLOCK_B.contains(&b));
    let mut p: Point<K> = std::array::from_fn(|_| K::zero());
    p[a] = K::one();
    p[b] = K::one().neg();
    p
}

/// The extra point that is singular exactly on the symmetric member.
pub fn tenth_node<K: CoeffField>() -> Point<K> {
    std::array::from_fn(|i| if i < 3 { K::one() } else { K::one().neg() })
}

/// Singular locus over Q by the support case split: a singular point either
/// has a vanishing coordinate, which forces the pattern "one survivor in
/// each index block" and yields the nine coordinate nodes, or has full
/// support, which forces equal coordinates per block and exists only for
/// the symmetric member. Every candidate is confirmed by the rank test.
pub fn singular_locus(alpha: &QQ) -> Result<Vec<Point<QQ>>, String> {
    if Zero::is_zero(alpha) {
        return Err("the family is defined for nonzero alpha".into());
    }
    let mut out: Vec<Point<QQ>> = Vec::new();
    // Vanishing-coordinate branch. With some coordinate zero, the six
    // partials (x2 x3, x1 x3, x1 x2, a x5 x6, a x4 x6, a x4 x5) must all be
    // equal; a zero in one block forces the common value to vanish, hence
    // two zeros in each block, and the linear equation leaves one survivor
    // pair with opposite values.
    for a in BLOCK_A {
        for b in BLOCK_B {
            let p = node_point::<QQ>(a, b);
            if is_singular_point(alpha, &p)? {
                out.push(p);
            }
        }
    }
    // Full-support branch: coordinates equal per block, scaled to
    // (s, s, s, t, t, t); the gradient condition gives s^2 = alpha t^2 and
    // the linear equation t = -s, so alpha = 1.
    if *alpha == ro() {
        let p = tenth_node::<QQ>();
        if is_singular_point(alpha, &p)? {
            out.push(p);
        }
    }
    // Confirm there are no duplicates projectively.
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            assert!(!same_projective_point(&out[i], &out[j]));
        }
    }
    Ok(out)
}

/// Chart data at a singular point: the quadratic and cubic parts of the
/// dehomogenized equation, in the four chart variables (poly slots 0..3).
pub struct TangentCone<K: CoeffField> {
    pub q: Poly<K>,
    pub c: Poly<K>,
    /// (dehomogenized coordinate, coordinate eliminated through L).
    pub chart: (usize, usize),
    /// Original variable index of each chart slot.
    pub vars: [usize; 4],
    pub rank: usize,
}

/// Default chart for a rational point: dehomogenize at the coordinate of
/// largest absolute value, eliminate the last coordinate (or the second to
/// last when they coincide).
pub fn default_chart(p: &Point<QQ>) -> (usize, usize) {
    let mut m = 0;
    for i in 1..6 {
        if p[i].abs() > p[m].abs() {
            m = i;
        }
    }
    (m, if m == 5 { 4 } else { 5 })
}

/// A second valid chart at the point, differing from the default:
/// dehomogenize at the last nonzero coordinate, eliminate the first
/// coordinate index distinct from it. Any valid chart gives the same
/// tangent-cone rank; callers compare the two.
pub fn alternate_chart(p: &Point<QQ>) -> (usize, usize) {
    let m = (0..6).rev().find(|&i| !Zero::is_zero(&p[i])).expect("nonzero point");
    let default = default_chart(p);
    let e = (0..6)
        .find(|&i| i != m && (m, i) != default)
        .expect("six coordinates leave room");
    (m, e)
}

/// Expand the affine equation of {F = 0, L = 0} around the given singular
/// point in the given chart and classify the quadratic part.
pub fn tangent_cone_at<K: CoeffField>(
    f: &Poly<K>,
    p: &Point<K>,
    chart: (usize, usize),
) -> Result<TangentCone<K>, String> {
    let (m, e) = chart;
    if m == e || m >= 6 || e >= 6 {
        return Err("invalid chart".into());
    }
    if p[m].is_zero() {
        return Err("chart does not contain the point".into());
    }
    let inv = p[m].inv().expect("nonzero coordinate");
    let norm: Vec<K> = p.iter().map(|c| c.mul(&inv)).collect();
    let vars: Vec<usize> = (0..6).filter(|&i| i != m && i != e).collect();
    let vars: [usize; 4] = vars.try_into().unwrap();

    // Substitution images: x_m = 1, x_i = y_slot + c_i for chart variables,
    // x_e = -1 - sum (y_slot + c_i).
    let mut images: [Poly<K>; NVARS] = std::array::from_fn(|_| Poly::zero());
    images[m] = Poly::constant(K::one());
    let mut esum = Poly::constant(K::one().neg());
    for (slot, &i) in vars.iter().enumerate() {
        let img = Poly::var(slot).add(&Poly::constant(norm[i].clone()));
        esum = esum.sub(&img);
        images[i] = img;
    }
    images[e] = esum;

    let local = f.substitute(&images);
    let c0 = local.homogeneous_component(0);
    let c1 = local.homogeneous_component(1);
    if !c0.is_zero() {
        return Err("point is not on the hypersurface".into());
    }
    if !c1.is_zero() {
        return Err("point is not singular".into());
    }
    let q = local.homogeneous_component(2);
    let c = local.homogeneous_component(3);

    // Rank of the symmetric matrix of q over the field.
    let mut mat: Vec<Vec<K>> = vec![vec![K::zero(); 4]; 4];
    let half = K::from_i64(2).inv().expect("characteristic zero");
    for i in 0..4 {
        for j in 0..4 {
            let mut exp: Exp = [0; NVARS];
            exp[i] += 1;
            exp[j] += 1;
            let coeff = q.coefficient(&exp);
            mat[i][j] = if i == j { coeff } else { coeff.mul(&half) };
        }
    }
    let rank = field_matrix_rank(&mut mat);
    Ok(TangentCone {
        q,
        c,
        chart,
        vars,
        rank,
    })
}

fn field_matrix_rank<K: CoeffField>(m: &mut [Vec<K>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0usize;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv().expect("nonzero pivot");
        for i in 0..rows {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].mul(&inv);
                for j in 0..cols {
                    let sub = f.mul(&m[rank][j]);
                    m[i][j] = m[i][j].sub(&sub);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the projectivized tangent cone of X(alpha) at a singular point;
/// 4 means an ordinary double point.
pub fn node_rank<K: CoeffField>(
    alpha: &K,
    p: &Point<K>,
    chart: (usize, usize),
) -> Result<usize, String> {
    match is_singular_point(alpha, p)? {
        true => {}
        false => return Err("point is not singular on the family member".into()),
    }
    let (f, _) = family_member(alpha)?;
    Ok(tangent_cone_at(&f, p, chart)?.rank)
}

/// A coordinate plane of the configuration: { x_a = x_b = 0 } inside the
/// hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PlaneAB {
    pub a: usize,
    pub b: usize,
}

impl PlaneAB {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(BLOCK_A.contains(&a) && BLOCK_B.contains(&b));
        Self { a, b }
    }

    pub fn all() -> Vec<Self> {
        BLOCK_A
            .iter()
            .flat_map(|&a| BLOCK_B.iter().map(move |&b| Self::new(a, b)))
            .collect()
    }

    /// Rank-3 parametrization rows inside the hyperplane: a basis of the
    /// solution space of x_a = x_b = sum x = 0.
    pub fn parametrization(&self) -> Vec<[i64; 6]> {
        let free: Vec<usize> = (0..6).filter(|&i| i != self.a && i != self.b).collect();
        let last = free[3];
        free[..3]
            .iter()
            .map(|&i| {
                let mut row = [0i64; 6];
                row[i] = 1;
                row[last] = -1;
                row
            })
            .collect()
    }

    pub fn contains_point<K: CoeffField>(&self, p: &Point<K>) -> bool {
        p[self.a].is_zero() && p[self.b].is_zero()
    }
}

/// Does the cubic vanish identically on the plane spanned by the given
/// rank-3 parametrization (rows must lie in the hyperplane)?
pub fn plane_membership<K: CoeffField>(
    alpha: &K,
    param: &[[i64; 6]],
) -> Result<bool, String> {
    if param.len() != 3 {
        return Err("a plane needs a rank-3 parametrization".into());
    }
    // Rank check over Q.
    let ratrows: Vec<Vec<BigRational>> = param
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    if crate::matrix::RatMat::from_rows(ratrows).rank() != 3 {
        return Err("degenerate parametrization".into());
    }
    let (f, l) = family_member(alpha)?;
    // Substitute x_i = sum_t param[t][i] * s_t (parameter slots 0..2).
    let images: [Poly<K>; NVARS] = std::array::from_fn(|i| {
        let mut acc = Poly::zero();
        for (t, row) in param.iter().enumerate() {
            if row[i] != 0 {
                acc = acc.add(&Poly::var(t).scale(&K::from_i64(row[i])));
            }
        }
        acc
    });
    if !l.substitute(&images).is_zero() {
        return Err("parametrization does not lie in the hyperplane".into());
    }
    Ok(f.substitute(&images).is_zero())
}

/// The nine configuration planes with their node incidences.
#[derive(Clone, Debug, Serialize)]
pub struct PlaneData {
    pub plane: PlaneAB,
    pub nodes_on: Vec<(usize, usize)>,
}

pub fn enumerate_planes(alpha: &QQ) -> Result<Vec<PlaneData>, String> {
    let nodes = singular_locus(alpha)?;
    let mut out = Vec::new();
    for plane in PlaneAB::all() {
        if !plane_membership(alpha, &plane.parametrization())? {
            return Err(format!("plane ({}, {}) escaped the cubic", plane.a, plane.b));
        }
        let mut nodes_on = Vec::new();
        for n in &nodes {
            if plane.contains_point(n) {
                // Identify coordinate nodes by their support.
                let a = BLOCK_A.iter().copied().find(|&i| !CoeffField::is_zero(&n[i]));
                let b = BLOCK_B.iter().copied().find(|&i| !CoeffField::is_zero(&n[i]));
                nodes_on.push((a.unwrap(), b.unwrap()));
            }
        }
        out.push(PlaneData { plane, nodes_on });
    }
    Ok(out)
}

/// Is the full line through p and q contained in X(alpha)?
pub fn line_in_family<K: CoeffField>(
    alpha: &K,
    p: &Point<K>,
    q: &Point<K>,
) -> Result<bool, String> {
    if same_projective_point(p, q) {
        return Err("need two distinct points to span a line".into());
    }
    let (f, l) = family_member(alpha)?;
    let on_l = |x: &Point<K>| l.eval(&x.to_vec()).is_zero();
    if !on_l(p) || !on_l(q) {
        return Err("line endpoints must lie in the hyperplane".into());
    }
    // x_i = p_i s + q_i t with parameter slots 0, 1.
    let images: [Poly<K>; NVARS] = std::array::from_fn(|i| {
        Poly::var(0)
            .scale(&p[i])
            .add(&Poly::var(1).scale(&q[i]))
    });
    Ok(f.substitute(&images).is_zero())
}

/// One line component of the cone of lines through a node, together with
/// the directions toward the other singular points that lie on it.
#[derive(Clone, Debug)]
pub struct ConeLine {
    pub plane: PlaneAB,
    pub direction_basis: [Vec<QQ>; 2],
    pub node_directions: Vec<(usize, usize)>,
}

pub struct NodeConeData {
    pub q: Poly<QQ>,
    pub c: Poly<QQ>,
    pub lines: Vec<ConeLine>,
    /// Directions toward every other singular point annihilate q and c.
    pub all_directions_on_cone: bool,
}

/// Expand the cone of lines through a coordinate node: the quadric and
/// cubic cut out the cone, each of the four planes through the node
/// supplies a line component, and each line carries the directions of
/// three other singular points.
pub fn lines_through_node(alpha: &QQ, a: usize, b: usize) -> Result<NodeConeData, String> {
    let node = node_point::<QQ>(a, b);
    if !is_singular_point(alpha, &node)? {
        return Err("the marked point is not singular here".into());
    }
    let (f, _) = family_member(alpha)?;
    let chart = default_chart(&node);
    let cone = tangent_cone_at(&f, &node, chart)?;
    if cone.rank != 4 {
        return Err("expected an ordinary double point".into());
    }
    let (m, e) = cone.chart;
    let norm: Vec<QQ> = {
        let inv = node[m].inv().unwrap();
        node.iter().map(|c| c.mul(&inv)).collect()
    };

    // Direction of the line from the node toward another point (chart
    // derivative at the node).
    let direction = |other: &Point<QQ>| -> Vec<QQ> {
        cone.vars
            .iter()
            .map(|&i| other[i].clone() - &norm[i] * &other[m])
            .collect()
    };

    // q and c as functions of a direction vector.
    let eval_dir = |p: &Poly<QQ>, v: &[QQ]| -> QQ {
        let mut full = vec![rz(); NVARS];
        full[..4].clone_from_slice(v);
        p.eval(&full)
    };

    let others: Vec<Point<QQ>> = singular_locus(alpha)?
        .into_iter()
        .filter(|p| !same_projective_point(p, &node))
        .collect();
    let all_directions_on_cone = others.iter().all(|p| {
        let v = direction(p);
        Zero::is_zero(&eval_dir(&cone.q, &v)) && Zero::is_zero(&eval_dir(&cone.c, &v))
    });

    let mut lines = Vec::new();
    for plane in PlaneAB::all() {
        if plane.a == a || plane.b == b {
            continue;
        }
        // The plane passes through the node; its direction space at the
        // node is cut out by the linear parts of x_{a'} and x_{b'} in chart
        // coordinates.
        let lin_form = |idx: usize| -> Vec<QQ> {
            // x_idx = y_slot + c (chart variable) or the eliminated
            // combination; as a linear form in the chart variables:
            if idx == m {
                vec![rz(); 4]
            } else if idx == e {
                vec![-ro(); 4]
            } else {
                let slot = cone.vars.iter().position(|&v| v == idx).unwrap();
                let mut v = vec![rz(); 4];
                v[slot] = ro();
                v
            }
        };
        let rows = vec![lin_form(plane.a), lin_form(plane.b)];
        let constraint = crate::matrix::RatMat::from_rows(rows);
        let (_, int) = constraint.transpose().clear_denominators();
        let kernel = int.left_kernel();
        if kernel.rows != 2 {
            return Err("plane direction space has unexpected dimension".into());
        }
        let basis: [Vec<QQ>; 2] = std::array::from_fn(|r| {
            (0..4)
                .map(|j| BigRational::from_integer(kernel[(r, j)].clone()))
                .collect()
        });
        // The pencil line must satisfy q = c = 0 identically: check on
        // s v1 + t v2 symbolically via slots 0, 1.
        let line_images: [Poly<QQ>; NVARS] = std::array::from_fn(|slot| {
            if slot < 4 {
                Poly::var(0)
                    .scale(&basis[0][slot])
                    .add(&Poly::var(1).scale(&basis[1][slot]))
            } else {
                Poly::zero()
            }
        });
        if !cone.q.substitute(&line_images).is_zero()
            || !cone.c.substitute(&line_images).is_zero()
        {
            return Err("plane pencil is not a component of the cone".into());
        }
        // Directions toward other singular points lying on this line: the
        // direction must be in the row span of the basis.
        let mut node_directions = Vec::new();
        for p in &others {
            let v = direction(p);
            let vmat = crate::matrix::RatMat::from_rows(vec![v.clone()]);
            let bmat = crate::matrix::RatMat::from_rows(basis.to_vec());
            if crate::matrix::RatMat::solve_left(&bmat, &vmat).is_some() {
                let pa = BLOCK_A.iter().copied().find(|&i| !CoeffField::is_zero(&p[i]));
                let pb = BLOCK_B.iter().copied().find(|&i| !CoeffField::is_zero(&p[i]));
                if let (Some(pa), Some(pb)) = (pa, pb) {
                    node_directions.push((pa, pb));
                }
            }
        }
        lines.push(ConeLine {
            plane,
            direction_basis: basis,
            node_directions,
        });
    }
    Ok(NodeConeData {
        q: cone.q,
        c: cone.c,
        lines,
        all_directions_on_cone,
    })
}

/// Projective dimension of the intersection of two configuration planes:
/// 5 minus the rank of the stacked linear conditions.
pub fn plane_intersection_dim(p1: &PlaneAB, p2: &PlaneAB) -> i64 {
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut cond = |idx: usize| {
        let mut r = vec![rz(); 6];
        r[idx] = ro();
        rows.push(r);
    };
    cond(p1.a);
    cond(p1.b);
    cond(p2.a);
    cond(p2.b);
    rows.push(vec![ro(); 6]);
    5 - crate::matrix::RatMat::from_rows(rows).rank() as i64
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaneSystem {
    pub class: char,
    pub index: usize,
    pub planes: Vec<PlaneAB>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaneSystemsReport {
    pub systems: Vec<PlaneSystem>,
    /// Projective dimension of the 36 pairwise intersections, keyed by the
    /// two planes.
    pub intersection_dims: Vec<((usize, usize), (usize, usize), i64)>,
    /// Two different systems share zero planes or exactly one.
    pub sharing_ok: bool,
    /// Node-plane criterion: a node lies on a plane iff that plane meets
    /// the node's own plane in a single point.
    pub criterion_ok: bool,
    /// Each plane sits in exactly one system of each class.
    pub bijection_ok: bool,
}

/// The six plane systems: index-sharing triples. The triple of planes with
/// a fixed first index is a class-A system, with a fixed second index a
/// class-B system. Also verifies the pairwise intersection pattern and the
/// node criterion. Everything here is alpha-independent linear algebra.
pub fn plane_systems() -> PlaneSystemsReport {
    let planes = PlaneAB::all();
    let mut systems = Vec::new();
    for (pos, &a) in BLOCK_A.iter().enumerate() {
        systems.push(PlaneSystem {
            class: 'A',
            index: pos + 1,
            planes: planes.iter().copied().filter(|p| p.a == a).collect(),
        });
    }
    for (pos, &b) in BLOCK_B.iter().enumerate() {
        systems.push(PlaneSystem {
            class: 'B',
            index: pos + 4,
            planes: planes.iter().copied().filter(|p| p.b == b).collect(),
        });
    }

    let mut intersection_dims = Vec::new();
    for p1 in &planes {
        for p2 in &planes {
            if (p1.a, p1.b) < (p2.a, p2.b) {
                intersection_dims.push((
                    (p1.a, p1.b),
                    (p2.a, p2.b),
                    plane_intersection_dim(p1, p2),
                ));
            }
        }
    }

    let mut sharing_ok = true;
    for i in 0..systems.len() {
        for j in i + 1..systems.len() {
            let shared = systems[i]
                .planes
                .iter()
                .filter(|p| systems[j].planes.contains(p))
                .count();
            if shared > 1 {
                sharing_ok = false;
            }
        }
    }

    // Node criterion against the intersection pattern: the node marked
    // (a, b) lies on plane (a', b') iff a' != a and b' != b iff the planes
    // (a, b) and (a', b') share no index iff they meet in a point.
    let mut criterion_ok = true;
    for own in &planes {
        for other in &planes {
            if own == other {
                continue;
            }
            let node = node_point::<QQ>(own.a, own.b);
            let on = other.contains_point(&node);
            let meets_in_point = plane_intersection_dim(own, other) == 0;
            if on != meets_in_point {
                criterion_ok = false;
            }
        }
    }

    let mut bijection_ok = true;
    for p in &planes {
        let in_a = systems
            .iter()
            .filter(|s| s.class == 'A' && s.planes.contains(p))
            .count();
        let in_b = systems
            .iter()
            .filter(|s| s.class == 'B' && s.planes.contains(p))
            .count();
        if (in_a, in_b) != (1, 1) {
            bijection_ok = false;
        }
    }

    PlaneSystemsReport {
        systems,
        intersection_dims,
        sharing_ok,
        criterion_ok,
        bijection_ok,
    }
}

/// The symmetric-coordinate identity: with y_i = x_j + x_k - x_i taken
/// within each index block, sum y_i equals sum x_i, and sum y_i^3 is a
/// nonzero rational multiple of x1 x2 x3 + x4 x5 x6 modulo the hyperplane.
pub struct SymmetricChangeReport {
    pub sums_match: bool,
    pub lambda: QQ,
    pub identity_holds: bool,
}

pub fn segre_change_check() -> SymmetricChangeReport {
    type P = Poly<QQ>;
    let y = |i: usize, j: usize, k: usize| -> P {
        P::var(j).add(&P::var(k)).sub(&P::var(i))
    };
    let ys = [
        y(0, 1, 2),
        y(1, 0, 2),
        y(2, 0, 1),
        y(3, 4, 5),
        y(4, 3, 5),
        y(5, 3, 4),
    ];
    let sum_y = ys.iter().fold(P::zero(), |acc, p| acc.add(p));
    let sum_x = (0..6).fold(P::zero(), |acc, i| acc.add(&P::var(i)));
    let sums_match = sum_y == sum_x;

    let cubes = ys.iter().fold(P::zero(), |acc, p| acc.add(&p.pow(3)));
    let target = P::var(0)
        .mul(&P::var(1))
        .mul(&P::var(2))
        .add(&P::var(3).mul(&P::var(4)).mul(&P::var(5)));

    // Reduce modulo the hyperplane by eliminating the last variable.
    let elim: [P; NVARS] = std::array::from_fn(|i| {
        if i < 5 {
            P::var(i)
        } else {
            (0..5).fold(P::zero(), |acc, t| acc.sub(&P::var(t)))
        }
    });
    let lhs = cubes.substitute(&elim);
    let rhs = target.substitute(&elim);
    let (le, lc) = lhs
        .terms()
        .next()
        .map(|(e, c)| (*e, c.clone()))
        .unwrap_or(([0; NVARS], rz()));
    let rc = rhs.coefficient(&le);
    let lambda = if Zero::is_zero(&rc) {
        rz()
    } else {
        lc / rc
    };
    let identity_holds = !Zero::is_zero(&lambda) && lhs == rhs.scale(&lambda);
    SymmetricChangeReport {
        sums_match,
        lambda,
        identity_holds,
    }
}

/// Moduli comparison of two members of the family.
#[derive(Clone, Debug, Serialize)]
pub struct IsoInvariant {
    pub isomorphic: bool,
    pub b_alpha: String,
    pub b_beta: String,
    pub swap_identity_ok: bool,
    pub symmetry_ok: bool,
}

/// The permutations of the two index blocks.
pub fn block_permutations() -> Vec<[usize; 6]> {
    let perms3: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = Vec::new();
    for pa in perms3 {
        for pb in perms3 {
            let mut perm = [0usize; 6];
            for i in 0..3 {
                perm[i] = pa[i];
                perm[3 + i] = 3 + pb[i];
            }
            out.push(perm);
        }
    }
    out
}

pub fn iso_invariant(alpha: &QQ, beta: &QQ) -> Result<IsoInvariant, String> {
    if Zero::is_zero(alpha) || Zero::is_zero(beta) {
        return Err("the family is defined for nonzero alpha".into());
    }
    let b = |x: &QQ| x + x.recip();
    let b_alpha = b(alpha);
    let b_beta = b(beta);
    let isomorphic = b_alpha == b_beta;
    // Consistency with the direct criterion beta in {alpha, 1/alpha}.
    assert_eq!(
        isomorphic,
        *beta == *alpha || *beta == alpha.recip(),
        "moduli coordinate disagrees with the direct criterion"
    );

    // The block swap carries X(alpha) onto X(1/alpha):
    // F_alpha o swap = alpha * F_{1/alpha}.
    let (f_a, _) = family_member(alpha)?;
    let (f_inv, _) = family_member(&alpha.recip())?;
    let swap = [3usize, 4, 5, 0, 1, 2];
    let swap_identity_ok = f_a.permute(&swap) == f_inv.scale(alpha);

    // Block permutations fix every member (checked symbolically).
    let (f_sym, l_sym) = family_member_symbolic();
    let symmetry_ok = block_permutations()
        .iter()
        .all(|perm| f_sym.permute(perm) == f_sym && l_sym.permute(perm) == l_sym);

    Ok(IsoInvariant {
        isomorphic,
        b_alpha: format!("{b_alpha}"),
        b_beta: format!("{b_beta}"),
        swap_identity_ok,
        symmetry_ok,
    })
}

// --- independent finite-field oracle ---

/// Count the singular points of the reduction of X(alpha) over F_p by brute
/// force over all points of the hyperplane. The scan is deliberately
/// independent of the symbolic machinery: plain machine arithmetic on the
/// explicit partial derivatives.
pub fn count_singular_mod_p(alpha: &QQ, p: u64) -> Result<u64, String> {
    if p < 5 {
        return Err("the oracle needs a prime p >= 5".into());
    }
    let modp = |x: &BigInt| -> u64 {
        let r = num_integer::Integer::mod_floor(x, &BigInt::from(p));
        r.to_string().parse().unwrap()
    };
    let num = modp(alpha.numer());
    let den = modp(alpha.denom());
    if den == 0 || num == 0 {
        return Err("bad reduction: alpha degenerates mod p".into());
    }
    let a = (num * mod_inv(den, p)) % p;

    let mut count = 0u64;
    // Points of the hyperplane = P^4 with coordinates (x1..x5), first
    // nonzero coordinate normalized to 1; x6 is determined by the linear
    // equation.
    for lead in 0..5usize {
        let free = 4 - lead;
        let total = p.pow(free as u32);
        for mut code in 0..total {
            let mut x = [0u64; 6];
            x[lead] = 1;
            for slot in lead + 1..5 {
                x[slot] = code % p;
                code /= p;
            }
            let sum: u64 = x[..5].iter().sum::<u64>() % p;
            x[5] = (p - sum % p) % p;
            // The six partials must coincide mod p.
            let d = [
                (x[1] * x[2]) % p,
                (x[0] * x[2]) % p,
                (x[0] * x[1]) % p,
                (a * ((x[4] * x[5]) % p)) % p,
                (a * ((x[3] * x[5]) % p)) % p,
                (a * ((x[3] * x[4]) % p)) % p,
            ];
            if d.iter().all(|&v| v == d[0]) {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat inverse; p is prime and a nonzero mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Smallest prime >= start with good reduction for the oracle: p at least
/// 5, both parts of alpha invertible, and alpha not congruent to 1 unless
/// it equals 1 (that congruence would create a spurious tenth point).
pub fn good_reduction_prime(alpha: &QQ, start: u64) -> u64 {
    let is_prime = |n: u64| -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    };
    let one = ro();
    let mut p = start.max(5);
    loop {
        if is_prime(p) {
            let pb = BigInt::from(p);
            let num_ok = !num_integer::Integer::mod_floor(alpha.numer(), &pb).is_zero();
            let den_ok = !num_integer::Integer::mod_floor(alpha.denom(), &pb).is_zero();
            let diff = alpha - &one;
            let not_spurious = Zero::is_zero(&diff) || {
                let t = diff.numer();
                !num_integer::Integer::mod_floor(t, &pb).is_zero()
            };
            if num_ok && den_ok && not_spurious {
                return p;
            }
        }
        p += 1;
    }
}

/// Compare the case-split singular count with the finite-field count at a
/// good-reduction prime.
pub fn oracle_agreement(alpha: &QQ, start_prime: u64) -> Result<(u64, u64, u64), String> {
    let p = good_reduction_prime(alpha, start_prime);
    let symbolic = singular_locus(alpha)?.len() as u64;
    let counted = count_singular_mod_p(alpha, p)?;
    Ok((symbolic, counted, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{rat, rint};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn family_members() {
        let (f, l) = family_member(&rint(1)).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(l.num_terms(), 6);
        let (f2, _) = family_member(&rint(2)).unwrap();
        assert_eq!(f2.num_terms(), 2);
        assert!(family_member(&rint(0)).is_err());
        let (fs, _) = family_member_symbolic();
        assert_eq!(fs.num_terms(), 2);
    }

    #[test]
    fn singularity_examples() {
        // The marked node is singular for every alpha, including symbolic.
        let o36 = node_point::<QQ>(2, 5);
        assert!(is_singular_point(&rint(2), &o36).unwrap());
        assert!(is_singular_point(&rint(7), &o36).unwrap());
        let o36_sym = node_point::<QAlpha>(2, 5);
        assert!(is_singular_point(&QAlpha::alpha(), &o36_sym).unwrap());
        // The full-support point is singular exactly at the symmetric
        // member.
        assert!(is_singular_point(&rint(1), &tenth_node::<QQ>()).unwrap());
        assert!(!is_singular_point(&rint(2), &tenth_node::<QQ>()).unwrap());
        assert!(!is_singular_point(&QAlpha::alpha(), &tenth_node::<QAlpha>()).unwrap());
        // A smooth point of the member at alpha = 2.
        let smooth: Point<QQ> = [rint(1), rint(-1), rint(0), rint(1), rint(-1), rint(0)];
        assert!(!is_singular_point(&rint(2), &smooth).unwrap());
    }

    #[test]
    fn singular_locus_counts() {
        assert_eq!(singular_locus(&rint(2)).unwrap().len(), 9);
        let segre = singular_locus(&rint(1)).unwrap();
        assert_eq!(segre.len(), 10);
        assert!(segre
            .iter()
            .any(|p| same_projective_point(p, &tenth_node::<QQ>())));
        assert!(singular_locus(&rint(0)).is_err());
    }

    #[test]
    fn node_ranks_are_four() {
        let o36 = node_point::<QQ>(2, 5);
        let chart = default_chart(&o36);
        assert_eq!(node_rank(&rint(2), &o36, chart).unwrap(), 4);
        // Second chart gives the same rank.
        assert_eq!(node_rank(&rint(2), &o36, (5, 0)).unwrap(), 4);
        // Tenth node on the symmetric member.
        let tenth = tenth_node::<QQ>();
        let chart = default_chart(&tenth);
        assert_eq!(node_rank(&rint(1), &tenth, chart).unwrap(), 4);
        // Non-singular input is rejected.
        assert!(node_rank(&rint(2), &tenth, chart).is_err());
    }

    #[test]
    fn degenerate_tangent_cone_detected() {
        // Control cubic outside the family: x1 x2 x3 = 0 has the marked
        // point as a singular point whose tangent quadric is x1 x2 of
        // rank 2.
        let f: Poly<QQ> = Poly::var(0).mul(&Poly::var(1)).mul(&Poly::var(2));
        let p = node_point::<QQ>(2, 5);
        let cone = tangent_cone_at(&f, &p, (2, 5)).unwrap();
        assert_eq!(cone.rank, 2);
        assert_eq!(cone.q.total_degree(), 2);
    }

    #[test]
    fn plane_memberships() {
        // The configuration planes lie on every member, symbolically.
        let alpha = QAlpha::alpha();
        for plane in PlaneAB::all() {
            assert!(plane_membership(&alpha, &plane.parametrization()).unwrap());
        }
        // A non-configuration plane is not contained: { x1 = x2 = 0 }.
        let param = [
            [0, 0, 1, 0, 0, -1],
            [0, 0, 0, 1, 0, -1],
            [0, 0, 0, 0, 1, -1],
        ];
        assert!(!plane_membership(&rint(2), &param).unwrap());
    }

    #[test]
    fn incidence_counts() {
        let planes = enumerate_planes(&rint(2)).unwrap();
        assert_eq!(planes.len(), 9);
        for p in &planes {
            assert_eq!(p.nodes_on.len(), 4, "plane {:?}", p.plane);
        }
        // Double count and the per-node dual statement.
        let total: usize = planes.iter().map(|p| p.nodes_on.len()).sum();
        assert_eq!(total, 36);
        for a in BLOCK_A {
            for b in BLOCK_B {
                let through = planes
                    .iter()
                    .filter(|p| p.nodes_on.contains(&(a, b)))
                    .count();
                assert_eq!(through, 4);
            }
        }
        // The marked node lies on exactly the four early planes.
        let on36: Vec<(usize, usize)> = planes
            .iter()
            .filter(|p| p.nodes_on.contains(&(2, 5)))
            .map(|p| (p.plane.a, p.plane.b))
            .collect();
        assert_eq!(on36, vec![(0, 3), (0, 4), (1, 3), (1, 4)]);
    }

    #[test]
    fn line_examples() {
        let alpha = rint(2);
        // Lines between nodes lie on the cubic.
        let o14 = node_point::<QQ>(0, 3);
        let o25 = node_point::<QQ>(1, 4);
        let o15 = node_point::<QQ>(0, 4);
        assert!(line_in_family(&alpha, &o14, &o25).unwrap());
        assert!(line_in_family(&alpha, &o14, &o15).unwrap());
        // A chord to a general smooth point leaves the cubic: this one has
        // full support, so no coordinate plane can absorb the line.
        let smooth: Point<QQ> = [rint(1), rint(2), rint(-12), rint(1), rint(2), rint(6)];
        assert!(!is_singular_point(&alpha, &smooth).unwrap());
        assert!(!line_in_family(&alpha, &o14, &smooth).unwrap());
        // Degenerate input.
        assert!(line_in_family(&alpha, &o14, &o14).is_err());
    }

    #[test]
    fn cone_of_lines_at_the_marked_node() {
        let data = lines_through_node(&rint(2), 2, 5).unwrap();
        assert_eq!(data.q.total_degree(), 2);
        assert_eq!(data.c.total_degree(), 3);
        assert_eq!(data.lines.len(), 4);
        let plane_pairs: Vec<(usize, usize)> = data
            .lines
            .iter()
            .map(|l| (l.plane.a, l.plane.b))
            .collect();
        assert_eq!(plane_pairs, vec![(0, 3), (0, 4), (1, 3), (1, 4)]);
        for line in &data.lines {
            assert_eq!(
                line.node_directions.len(),
                3,
                "plane {:?} carries {} directions",
                line.plane,
                line.node_directions.len()
            );
        }
        assert!(data.all_directions_on_cone);
    }

    #[test]
    fn plane_system_structure() {
        let report = plane_systems();
        assert_eq!(report.systems.len(), 6);
        assert_eq!(
            report.systems.iter().filter(|s| s.class == 'A').count(),
            3
        );
        assert_eq!(
            report.systems.iter().filter(|s| s.class == 'B').count(),
            3
        );
        assert!(report.sharing_ok);
        assert!(report.criterion_ok);
        assert!(report.bijection_ok);
        // Index-sharing planes meet in a line, others in a point.
        for ((a1, b1), (a2, b2), dim) in &report.intersection_dims {
            let expect = if a1 == a2 || b1 == b2 { 1 } else { 0 };
            assert_eq!(*dim, expect);
        }
        // Spot check the two named pairs.
        assert_eq!(
            plane_intersection_dim(&PlaneAB::new(0, 3), &PlaneAB::new(1, 4)),
            0
        );
        assert_eq!(
            plane_intersection_dim(&PlaneAB::new(0, 3), &PlaneAB::new(0, 4)),
            1
        );
    }

    #[test]
    fn symmetric_coordinate_change() {
        let report = segre_change_check();
        assert!(report.sums_match);
        assert_eq!(report.lambda, rint(-24));
        assert!(report.identity_holds);
    }

    #[test]
    fn moduli_invariant() {
        let r = iso_invariant(&rint(2), &rat(1, 2)).unwrap();
        assert!(r.isomorphic);
        assert_eq!(r.b_alpha, "5/2");
        assert_eq!(r.b_beta, "5/2");
        assert!(r.swap_identity_ok);
        assert!(r.symmetry_ok);
        let r = iso_invariant(&rint(2), &rint(3)).unwrap();
        assert!(!r.isomorphic);
        let r = iso_invariant(&rat(7, 3), &rat(7, 3)).unwrap();
        assert!(r.isomorphic);
        assert!(iso_invariant(&rint(0), &rint(1)).is_err());
    }

    #[test]
    fn oracle_counts() {
        // 16105 = |P^4(F_11)| points are scanned; the count matches the
        // case split at alpha = 2 and at the symmetric member.
        let (sym, counted, p) = oracle_agreement(&rint(2), 11).unwrap();
        assert_eq!(p, 11);
        assert_eq!(sym, 9);
        assert_eq!(counted, 9);
        let (sym, counted, _) = oracle_agreement(&rint(1), 11).unwrap();
        assert_eq!(sym, 10);
        assert_eq!(counted, 10);
        // alpha = 12 reduces to 1 mod 11: the prime picker skips to 13.
        assert_eq!(good_reduction_prime(&rint(12), 11), 13);
        let (sym, counted, _) = oracle_agreement(&rint(12), 11).unwrap();
        assert_eq!((sym, counted), (9, 9));
        // Bad reduction is reported at the raw scan.
        assert!(count_singular_mod_p(&rat(11, 1), 11).is_err());
        assert!(count_singular_mod_p(&rat(1, 11), 11).is_err());
    }

    #[test]
    fn random_members_have_nine_nodes() {
        let mut rng = StdRng::seed_from_u64(0xC0FFEE);
        for _ in 0..5 {
            let mut alpha = rat(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=9));
            if Zero::is_zero(&alpha) || alpha == rint(1) {
                alpha = rat(3, 2);
            }
            let locus = singular_locus(&alpha).unwrap();
            assert_eq!(locus.len(), 9);
            for p in &locus {
                let chart = default_chart(p);
                assert_eq!(node_rank(&alpha, p, chart).unwrap(), 4);
            }
        }
    }
}
