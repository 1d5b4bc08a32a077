//! Branched-cover towers with quaternion deck group.
//!
//! A tower over a base curve of genus g is determined by a surjection of
//! the punctured surface group onto the quaternion group sending each
//! branch loop to an element of order 4. Branch points split by the cyclic
//! subgroup containing the inertia: a_i, a_j, a_k count the points of
//! inertia <i>, <j>, <k> (a' counts branch points where the middle quotient
//! is unramified; the principally polarizable towers all have a' = 0).
//!
//! The module covers the numeric side: genus accounting through
//! Riemann-Hurwitz, enumeration of the admissible parameter tuples, genus
//! tables for elementary-abelian covers of the line, and the finite count
//! of quaternion lifts of a Klein-four cover in genus 2.

use crate::homology::GroupSpec;
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::BTreeMap;

/// Branch data (g; a', a_i, a_j, a_k).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TowerSpec {
    pub g: u32,
    pub a_prime: u32,
    pub a_i: u32,
    pub a_j: u32,
    pub a_k: u32,
}

impl TowerSpec {
    /// Validates the parity constraint: the three second-type counts must
    /// share a parity.
    pub fn new(g: u32, a_prime: u32, a_i: u32, a_j: u32, a_k: u32) -> Result<Self, String> {
        if a_i % 2 != a_j % 2 || a_j % 2 != a_k % 2 {
            return Err(format!(
                "branch counts ({a_i}, {a_j}, {a_k}) do not share a parity"
            ));
        }
        Ok(Self {
            g,
            a_prime,
            a_i,
            a_j,
            a_k,
        })
    }

    pub fn a(&self) -> u32 {
        self.a_prime + self.a_i + self.a_j + self.a_k
    }

    /// CLI syntax "g:a'.ai.aj.ak".
    pub fn parse(s: &str) -> Result<Self, String> {
        let (g, rest) = s.split_once(':').ok_or("expected g:a'.ai.aj.ak")?;
        let parts: Vec<&str> = rest.split('.').collect();
        if parts.len() != 4 {
            return Err("expected four dot-separated branch counts".into());
        }
        let g = g.parse().map_err(|_| "bad genus")?;
        let nums: Vec<u32> = parts
            .iter()
            .map(|p| p.parse().map_err(|_| "bad branch count".to_string()))
            .collect::<Result<_, _>>()?;
        Self::new(g, nums[0], nums[1], nums[2], nums[3])
    }
}

impl std::fmt::Display for TowerSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}:{}.{}.{}.{}",
            self.g, self.a_prime, self.a_i, self.a_j, self.a_k
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerInvariants {
    pub g_pm: i64,
    pub g_tilde: i64,
    pub dim_p: i64,
    pub dim_moduli: i64,
    pub dim_shim: i64,
    pub n: i64,
}

/// Genus and dimension accounting:
///   g_pm = 4g - 3 + a - a',  g_tilde = 8g - 7 + 3a - a',
///   dim P = 4(g - 1) + 2a,   dim moduli = 3g - 3 + a,
///   dim Shim = n(n-1)/2 with n = dim P / 2.
pub fn tower_invariants(spec: &TowerSpec) -> Result<TowerInvariants, String> {
    let g = spec.g as i64;
    let a = spec.a() as i64;
    let ap = spec.a_prime as i64;
    let g_pm = 4 * g - 3 + a - ap;
    let g_tilde = 8 * g - 7 + 3 * a - ap;
    if g_pm < 0 || g_tilde < 0 {
        return Err("tower produces a negative genus".into());
    }
    let dim_p = 4 * (g - 1) + 2 * a;
    let n = dim_p / 2;
    Ok(TowerInvariants {
        g_pm,
        g_tilde,
        dim_p,
        dim_moduli: 3 * g - 3 + a,
        dim_shim: n * (n - 1) / 2,
        n,
    })
}

/// The six (g, a) pairs allowed by the pure dimension count, before the
/// parity constraint removes one.
pub fn dimension_allowed_pairs() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for g in 0..=6i64 {
        for a in 0..=6i64 {
            let n = 2 * (g - 1) + a;
            if n < 2 {
                continue;
            }
            if 3 * g - 3 + a < n * (n - 1) / 2 {
                continue;
            }
            out.push((g as u32, a as u32));
        }
    }
    out
}

/// Is there a surjection of the genus-g surface group with a branch loops
/// onto the quaternion group sending each branch loop to an element of
/// order 4 of the prescribed type? Checked by brute force over all images.
fn realizable(g: u32, counts: (u32, u32, u32)) -> bool {
    let q = GroupSpec::quaternion_group();
    // Order-4 elements come in inverse pairs: +-i, +-j, +-k.
    let pm: [(usize, usize); 3] = [(2, 3), (4, 5), (6, 7)];
    let mut branch_choices: Vec<(usize, usize)> = Vec::new();
    for _ in 0..counts.0 {
        branch_choices.push(pm[0]);
    }
    for _ in 0..counts.1 {
        branch_choices.push(pm[1]);
    }
    for _ in 0..counts.2 {
        branch_choices.push(pm[2]);
    }
    let a = branch_choices.len();
    let handles = 2 * g as usize;
    let total_handle = 8usize.pow(handles as u32);
    let total_branch = 1usize << a;
    for h in 0..total_handle {
        let mut hh = h;
        let mut handle_imgs = Vec::with_capacity(handles);
        for _ in 0..handles {
            handle_imgs.push(hh % 8);
            hh /= 8;
        }
        // Product of commutators of the handle images.
        let mut prod = q.identity;
        for pair in handle_imgs.chunks(2) {
            let (x, y) = (pair[0], pair[1]);
            let c = q.mul[q.mul[x][y]][q.mul[q.inv[x]][q.inv[y]]];
            prod = q.mul[prod][c];
        }
        for b in 0..total_branch {
            let mut branch_imgs = Vec::with_capacity(a);
            for (t, choice) in branch_choices.iter().enumerate() {
                branch_imgs.push(if (b >> t) & 1 == 0 { choice.0 } else { choice.1 });
            }
            let mut full = prod;
            for &x in &branch_imgs {
                full = q.mul[full][x];
            }
            if full != q.identity {
                continue;
            }
            // Surjectivity: the images must generate the whole group.
            let mut gens: Vec<usize> = handle_imgs.clone();
            gens.extend(&branch_imgs);
            let mut reached = vec![false; 8];
            reached[q.identity] = true;
            let mut frontier = vec![q.identity];
            while let Some(x) = frontier.pop() {
                for &y in &gens {
                    let z = q.mul[x][y];
                    if !reached[z] {
                        reached[z] = true;
                        frontier.push(z);
                    }
                }
            }
            if reached.iter().all(|&r| r) {
                return true;
            }
        }
    }
    false
}

/// All admissible towers with a' = 0, branch counts normalized descending.
/// The scan applies the parity constraint, the dimension inequalities, and
/// the existence of a surjective monodromy assignment.
pub fn enumerate_admissible() -> Vec<TowerSpec> {
    let mut out = Vec::new();
    for g in 0..=4u32 {
        for a in 0..=5u32 {
            for ai in (0..=a).rev() {
                for aj in (0..=a.saturating_sub(ai)).rev() {
                    let ak = a - ai - aj;
                    if ak > aj || aj > ai {
                        continue;
                    }
                    if ai % 2 != aj % 2 || aj % 2 != ak % 2 {
                        continue;
                    }
                    let Ok(spec) = TowerSpec::new(g, 0, ai, aj, ak) else {
                        continue;
                    };
                    let Ok(inv) = tower_invariants(&spec) else {
                        continue;
                    };
                    if inv.n < 2 || inv.dim_moduli < inv.dim_shim {
                        continue;
                    }
                    if !realizable(g, (ai, aj, ak)) {
                        continue;
                    }
                    out.push(spec);
                }
            }
        }
    }
    out.sort();
    out
}

/// Elementary-abelian cover data: the deck group is (Z/2)^k acting on a
/// cover of the line, with one inertia vector per branch point. The
/// inertia vectors must sum to zero.
#[derive(Clone, Debug)]
pub struct AbelianCoverSpec {
    pub k: u32,
    pub branch_points: Vec<String>,
    pub inertia: Vec<u32>,
}

impl AbelianCoverSpec {
    pub fn new(k: u32, branch_points: Vec<String>, inertia: Vec<u32>) -> Result<Self, String> {
        if branch_points.len() != inertia.len() {
            return Err("one inertia vector per branch point".into());
        }
        if inertia.iter().any(|&v| v == 0 || v >= 1 << k) {
            return Err("inertia vectors must be nonzero elements of F2^k".into());
        }
        if inertia.iter().fold(0, |acc, v| acc ^ v) != 0 {
            return Err("inertia vectors must sum to zero".into());
        }
        Ok(Self {
            k,
            branch_points,
            inertia,
        })
    }

    /// The five-point configuration: four independent inertia vectors and
    /// their sum.
    pub fn five_points() -> Self {
        Self::new(
            4,
            ["p1", "p2", "p3", "p4", "p5"].iter().map(|s| s.to_string()).collect(),
            vec![0b0001, 0b0010, 0b0100, 0b1000, 0b1111],
        )
        .expect("valid configuration")
    }

    /// Three pairs of branch points, each pair carrying one basis vector.
    pub fn three_pairs() -> Self {
        Self::new(
            3,
            ["a10", "a11", "a20", "a21", "a30", "a31"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            vec![0b001, 0b001, 0b010, 0b010, 0b100, 0b100],
        )
        .expect("valid configuration")
    }
}

/// One quotient curve: the subgroup (as its element list), its level
/// (log2 of the quotient-group order) and the quotient genus.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientGenus {
    pub level: u32,
    pub subgroup: Vec<u32>,
    pub genus: i64,
}

fn subspace_span(k: u32, gens: &[u32]) -> Vec<u32> {
    let mut members = vec![0u32];
    for &g in gens {
        let snapshot = members.clone();
        for m in snapshot {
            let v = m ^ g;
            if !members.contains(&v) {
                members.push(v);
            }
        }
    }
    let _ = k;
    members.sort();
    members.dedup();
    members
}

/// All subspaces of F2^k, as sorted member lists.
pub fn all_subspaces(k: u32) -> Vec<Vec<u32>> {
    let mut seen: Vec<Vec<u32>> = vec![vec![0]];
    let mut frontier = vec![vec![0u32]];
    while let Some(space) = frontier.pop() {
        for v in 1..(1u32 << k) {
            if space.contains(&v) {
                continue;
            }
            let mut gens: Vec<u32> = space.clone();
            gens.push(v);
            let bigger = subspace_span(k, &gens);
            if !seen.contains(&bigger) {
                seen.push(bigger.clone());
                frontier.push(bigger);
            }
        }
    }
    seen.sort();
    seen
}

/// Genus of every quotient of the cover, organized by subgroup. The genus
/// comes from Riemann-Hurwitz over the line:
///   2g - 2 = -2 |Q| + sum_p (|Q| / e_p)(e_p - 1),
/// where e_p in {1, 2} is the order of the inertia image in the quotient Q.
pub fn abelian_quotient_genera(spec: &AbelianCoverSpec) -> Vec<QuotientGenus> {
    let mut out = Vec::new();
    for subgroup in all_subspaces(spec.k) {
        let dim = subgroup.len().trailing_zeros();
        let level = spec.k - dim;
        let q_order = 1i64 << level;
        let ramified = spec
            .inertia
            .iter()
            .filter(|&&v| !subgroup.contains(&v))
            .count() as i64;
        let two_g_minus_2 = -2 * q_order + ramified * (q_order / 2);
        assert!(two_g_minus_2 % 2 == 0, "genus must be integral");
        let genus = (two_g_minus_2 + 2) / 2;
        assert!(genus >= 0, "negative genus in quotient table");
        out.push(QuotientGenus {
            level,
            subgroup,
            genus,
        });
    }
    out.sort_by(|a, b| (a.level, &a.subgroup).cmp(&(b.level, &b.subgroup)));
    out
}

/// Genus counts per level: level -> (genus -> count).
pub fn level_counts(table: &[QuotientGenus]) -> BTreeMap<u32, BTreeMap<i64, u32>> {
    let mut out: BTreeMap<u32, BTreeMap<i64, u32>> = BTreeMap::new();
    for q in table {
        if q.level == 0 {
            continue;
        }
        *out.entry(q.level).or_default().entry(q.genus).or_default() += 1;
    }
    out
}

/// Result of the finite lift count for a Klein-four assignment in genus 2.
#[derive(Clone, Debug, Serialize)]
pub struct LiftCount {
    pub lifts: usize,
    pub distinct_covers: usize,
    pub actions_per_cover: usize,
    pub conjugation_orbits_per_cover: usize,
}

/// Count homomorphisms onto the quaternion group lifting the given
/// Klein-four assignment on the four genus-2 generators, and group them by
/// the double cover they induce.
///
/// The grouping walks the Schreier coset graph of the preimage subgroup:
/// cosets are the elements of the image of the Klein-four assignment, a
/// breadth-first transversal provides coset representative words, and each
/// (coset, generator) pair contributes one subgroup generator on which the
/// sign character of the lift is evaluated.
pub fn count_quaternion_lifts(psi_pm: &[usize; 4]) -> Result<LiftCount, String> {
    let v4 = GroupSpec::klein_four();
    let q = GroupSpec::quaternion_group();
    if psi_pm.iter().any(|&x| x >= 4) {
        return Err("assignment must take values in the Klein four-group".into());
    }
    // The surface relation in the abelian target is automatic, but keep the
    // check explicit.
    let mut rel = v4.identity;
    for pair in psi_pm.chunks(2) {
        let c = v4.mul[v4.mul[pair[0]][pair[1]]]
            [v4.mul[v4.inv[pair[0]]][v4.inv[pair[1]]]];
        rel = v4.mul[rel][c];
    }
    if rel != v4.identity {
        return Err("assignment violates the surface relation".into());
    }

    // Image subgroup of the assignment and a BFS transversal of its cosets
    // (cosets of the preimage subgroup biject with image elements).
    let gens: Vec<u32> = psi_pm.iter().map(|&x| x as u32).collect();
    let image = subspace_span(2, &gens);
    let mut transversal: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    transversal.insert(0, vec![]);
    let mut queue = vec![0u32];
    while let Some(s) = queue.pop() {
        for (t, &gx) in psi_pm.iter().enumerate() {
            let next = s ^ gx as u32;
            if image.contains(&next) && !transversal.contains_key(&next) {
                let mut w = transversal[&s].clone();
                w.push(t);
                transversal.insert(next, w);
                queue.push(next);
            }
        }
    }

    // Lift enumeration: each generator has two preimages g, -g.
    let lift_of = |v4_elem: usize, sign: bool| -> usize {
        // Klein indices 0..3 map to quaternion indices (1, i, j, k) at
        // 2*idx, with the sign toggling the odd slot.
        if v4_elem == 0 {
            usize::from(sign) // 1 or -1
        } else {
            2 * v4_elem + usize::from(sign)
        }
    };
    let mut lifts: Vec<[usize; 4]> = Vec::new();
    for mask in 0..16u32 {
        let imgs: [usize; 4] = std::array::from_fn(|t| lift_of(psi_pm[t], (mask >> t) & 1 == 1));
        let mut rel = q.identity;
        for pair in imgs.chunks(2) {
            let c = q.mul[q.mul[pair[0]][pair[1]]][q.mul[q.inv[pair[0]]][q.inv[pair[1]]]];
            rel = q.mul[rel][c];
        }
        if rel == q.identity {
            lifts.push(imgs);
        }
    }

    // Signature of a lift: the sign character evaluated on the Schreier
    // generators t_s x t_{s x}^-1 of the preimage subgroup.
    let eval_word = |imgs: &[usize; 4], word: &[usize]| -> usize {
        word.iter().fold(q.identity, |acc, &t| q.mul[acc][imgs[t]])
    };
    let signature = |imgs: &[usize; 4]| -> Vec<bool> {
        let mut sig = Vec::new();
        for (&s, w) in &transversal {
            for (t, &gx) in psi_pm.iter().enumerate() {
                let s2 = s ^ gx as u32;
                let w2 = &transversal[&s2];
                let mut val = eval_word(imgs, w);
                val = q.mul[val][imgs[t]];
                let inv_w2 = eval_word(imgs, w2);
                val = q.mul[val][q.inv[inv_w2]];
                // The word lies in the preimage subgroup, so its image is
                // central: 1 or -1.
                assert!(val == 0 || val == 1, "schreier word escapes the center");
                sig.push(val == 1);
            }
        }
        sig
    };

    let mut groups: BTreeMap<Vec<bool>, Vec<[usize; 4]>> = BTreeMap::new();
    for l in &lifts {
        groups.entry(signature(l)).or_default().push(*l);
    }
    let distinct_covers = groups.len();
    let sizes: Vec<usize> = groups.values().map(|v| v.len()).collect();
    let actions_per_cover = sizes.first().copied().unwrap_or(0);
    if sizes.iter().any(|&s| s != actions_per_cover) {
        return Err("cover classes are not equally sized".into());
    }

    // Conjugation orbits within each cover class.
    let mut orbit_counts = Vec::new();
    for members in groups.values() {
        let mut seen: Vec<[usize; 4]> = Vec::new();
        let mut orbits = 0;
        for m in members {
            if seen.contains(m) {
                continue;
            }
            orbits += 1;
            for c in 0..8 {
                let conj: [usize; 4] =
                    std::array::from_fn(|t| q.mul[q.mul[c][m[t]]][q.inv[c]]);
                if !seen.contains(&conj) && members.contains(&conj) {
                    seen.push(conj);
                }
            }
        }
        orbit_counts.push(orbits);
    }
    let conjugation_orbits_per_cover = orbit_counts.first().copied().unwrap_or(0);

    Ok(LiftCount {
        lifts: lifts.len(),
        distinct_covers,
        actions_per_cover,
        conjugation_orbits_per_cover,
    })
}

/// The sixteen sign characters act freely and transitively on the lift set
/// of the normal form; returns true when the torsor property holds.
pub fn lifts_form_character_torsor(psi_pm: &[usize; 4]) -> Result<bool, String> {
    let q = GroupSpec::quaternion_group();
    let lift_of = |v4_elem: usize, sign: bool| -> usize {
        if v4_elem == 0 {
            usize::from(sign)
        } else {
            2 * v4_elem + usize::from(sign)
        }
    };
    let mut lifts: Vec<[usize; 4]> = Vec::new();
    for mask in 0..16u32 {
        let imgs: [usize; 4] = std::array::from_fn(|t| lift_of(psi_pm[t], (mask >> t) & 1 == 1));
        let mut rel = q.identity;
        for pair in imgs.chunks(2) {
            let c = q.mul[q.mul[pair[0]][pair[1]]][q.mul[q.inv[pair[0]]][q.inv[pair[1]]]];
            rel = q.mul[rel][c];
        }
        if rel == q.identity {
            lifts.push(imgs);
        }
    }
    if lifts.is_empty() {
        return Err("no lifts to act on".into());
    }
    let base = lifts[0];
    // Multiply base by each of the 16 characters (signs on generators).
    let mut orbit: Vec<[usize; 4]> = Vec::new();
    for mask in 0..16u32 {
        let twisted: [usize; 4] = std::array::from_fn(|t| {
            if (mask >> t) & 1 == 1 {
                q.mul[1][base[t]] // multiply by the central -1
            } else {
                base[t]
            }
        });
        orbit.push(twisted);
    }
    orbit.sort();
    orbit.dedup();
    let mut sorted = lifts.clone();
    sorted.sort();
    Ok(orbit == sorted && lifts.len() == 16)
}

/// Exact cross-check of the quotient table: the genus of the full cover
/// equals the sum of the genera of the index-2 quotients.
pub fn character_sum_check(spec: &AbelianCoverSpec) -> bool {
    let table = abelian_quotient_genera(spec);
    let full = table
        .iter()
        .find(|q| q.level == spec.k)
        .map(|q| q.genus)
        .unwrap_or(-1);
    let level1: i64 = table
        .iter()
        .filter(|q| q.level == 1)
        .map(|q| q.genus)
        .sum();
    full == level1
}

/// Sum over the claimed invariants table: each named case with its row.
pub fn admissible_table() -> Vec<(TowerSpec, TowerInvariants)> {
    enumerate_admissible()
        .into_iter()
        .map(|s| {
            let inv = tower_invariants(&s).expect("admissible towers have valid invariants");
            (s, inv)
        })
        .collect()
}

/// Convenience for reports: monotonicity of dim P in a, evenness.
pub fn invariants_sanity(max_g: u32, max_a: u32) -> bool {
    for g in 0..=max_g {
        let mut prev: Option<i64> = None;
        for a in (0..=max_a).step_by(2) {
            let Ok(spec) = TowerSpec::new(g, 0, a, 0, 0) else {
                continue;
            };
            let Ok(inv) = tower_invariants(&spec) else {
                prev = None;
                continue;
            };
            if inv.dim_p % 2 != 0 {
                return false;
            }
            if let Some(p) = prev {
                if inv.dim_p <= p {
                    return false;
                }
            }
            prev = Some(inv.dim_p);
        }
    }
    true
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
