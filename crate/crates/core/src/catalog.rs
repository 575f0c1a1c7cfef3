//! The two polynomial families: the `D ⋉ A(n,k)` base of the
//! Clelland–Parker systems and the `P₁`, `C`, `K` data of the
//! Parker–Stroth systems, with their printed structural facts checked by
//! brute force.

use crate::error::{Error, Result};
use crate::fpla::{inv_mod, is_prime};
use crate::fusion::Ambient;
use crate::groups::{
    centralizer, generate_subgroup, normalizer, p_part, Elem, FiniteGroup, Representation,
    DEFAULT_ORDER_BOUND,
};
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;

/// One named structural check.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn eq<T: PartialEq + std::fmt::Debug>(name: &str, expected: T, actual: T) -> Self {
        Check {
            name: name.into(),
            pass: expected == actual,
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
        }
    }
}

pub fn primitive_root(p: u32) -> u32 {
    (1..p)
        .find(|&g| (1..p - 1).all(|e| pow_mod(g, e, p) != 1))
        .unwrap_or(1)
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut r, mut b) = (1u64, a as u64 % p as u64);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn binom(n: u32, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn gl2_order(q: u64) -> u64 {
    (q * q - 1) * (q * q - q)
}

/// Coefficients of `λ f(ax+by, cx+dy)` for `f = x^{n-j} y^j`, indexed by
/// the power of `y`.
fn transform_monomial(n: usize, j: usize, lambda: u32, m: [u32; 4], p: u32) -> Vec<u32> {
    let [a, b, c, d] = m;
    let mul = |f: &[u32], g: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; f.len() + g.len() - 1];
        for (i, &x) in f.iter().enumerate() {
            for (k, &y) in g.iter().enumerate() {
                out[i + k] = (out[i + k] + x * y) % p;
            }
        }
        out
    };
    let mut acc = vec![lambda % p];
    for _ in 0..n - j {
        acc = mul(&acc, &[a, b]);
    }
    for _ in 0..j {
        acc = mul(&acc, &[c, d]);
    }
    acc
}

/// Matrix of `f ↦ f·(λ, M)` on `A(n, p)` in the monomial basis.
fn poly_action(n: usize, lambda: u32, m: [u32; 4], p: u32) -> Vec<Vec<u32>> {
    (0..=n)
        .map(|j| transform_monomial(n, j, lambda, m, p))
        .collect()
}

fn gl2_elements(p: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p != 0 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn gl2_generators(p: u32) -> Vec<[u32; 4]> {
    let w = primitive_root(p);
    vec![[w, 0, 0, 1], [1, 1, 0, 1], [0, 1, 1, 0]]
}

#[derive(Debug)]
pub struct CPBase {
    pub p: u32,
    pub q: u32,
    pub n: usize,
    pub d: Arc<FiniteGroup>,
    pub a: Arc<FiniteGroup>,
    pub p_group: Arc<FiniteGroup>,
    pub u: Arc<FiniteGroup>,
    pub s: Arc<FiniteGroup>,
    /// `C_i = ⟨x^{n-j} y^j : j ≤ i⟩`.
    pub c: Vec<Arc<FiniteGroup>>,
    pub r: Arc<FiniteGroup>,
    pub q_sub: Arc<FiniteGroup>,
    pub np_r: Arc<FiniteGroup>,
    pub np_q: Arc<FiniteGroup>,
}

impl CPBase {
    /// `(θ, M, f)` as a block matrix `diag(ρ(θ,M), θ, M, 1)` with `f` in
    /// the last row.
    pub fn element(&self, theta: u32, m: [u32; 4], f: &[u32]) -> Elem {
        cp_element(self.n, self.q, theta, m, f)
    }

    pub fn verify(&self) -> Result<Vec<Check>> {
        let (n, q) = (self.n, self.q as u64);
        let mut out = vec![
            Check::eq("|A|", q.pow(n as u32 + 1) as usize, self.a.order()),
            Check::eq("A abelian", true, self.a.is_abelian()),
            Check::eq("|D|", ((q - 1) * gl2_order(q)) as usize, self.d.order()),
            Check::eq(
                "|P|",
                ((q - 1) * gl2_order(q) * q.pow(n as u32 + 1)) as usize,
                self.p_group.order(),
            ),
            Check::eq("|S|", q.pow(n as u32 + 2) as usize, self.s.order()),
            Check::eq(
                "S Sylow in P",
                p_part(self.p_group.order(), self.p),
                self.s.order(),
            ),
        ];
        // abelian subgroups of S of order at least |A|
        let amb = Ambient::new(self.s.clone(), self.p)?;
        let big_abelian: Vec<usize> = amb
            .subgroups()
            .iter()
            .filter(|h| h.order >= self.a.order())
            .filter(|h| {
                h.gens
                    .iter()
                    .all(|&x| h.gens.iter().all(|&y| amb.mul(x, y) == amb.mul(y, x)))
            })
            .map(|h| h.order)
            .collect();
        out.push(Check::eq(
            "abelian subgroups of S of order ≥ |A|",
            vec![self.a.order()],
            big_abelian.clone(),
        ));
        if big_abelian.len() == 1 {
            let a_id = amb.id_of_group(&self.a)?;
            let only = amb
                .subgroups()
                .iter()
                .position(|h| {
                    h.order == self.a.order()
                        && h.gens
                            .iter()
                            .all(|&x| h.gens.iter().all(|&y| amb.mul(x, y) == amb.mul(y, x)))
                })
                .unwrap();
            out.push(Check::eq("the maximal abelian subgroup is A", a_id, only));
        }
        let closed_r = self.normalizer_closed_form(1);
        let closed_q = self.normalizer_closed_form(2);
        out.push(Check::eq("|N_P(R)|", closed_r.len(), self.np_r.order()));
        out.push(Check::eq(
            "N_P(R) = closed form",
            closed_r,
            self.np_r.elements().to_vec(),
        ));
        out.push(Check::eq("|N_P(Q)|", closed_q.len(), self.np_q.order()));
        out.push(Check::eq(
            "N_P(Q) = closed form",
            closed_q,
            self.np_q.elements().to_vec(),
        ));
        for (name, x, nx) in [("R", &self.r, &self.np_r), ("Q", &self.q_sub, &self.np_q)] {
            let normal = x
                .generators()
                .iter()
                .all(|y| nx.elements().iter().all(|g| x.contains(&nx.conj(y, g))));
            out.push(Check::eq(
                &format!("{name} normal in N_P({name})"),
                true,
                normal,
            ));
            let c = centralizer(&self.p_group, x);
            let z = centralizer(x, x);
            out.push(Check::eq(
                &format!("{name} p-centric in P"),
                z.order(),
                p_part(c.order(), self.p),
            ));
        }
        Ok(out)
    }

    /// `{(θ, [[a,0],[c,b]], f) : f ∈ C_i}` sorted.
    pub fn normalizer_closed_form(&self, i: usize) -> Vec<Elem> {
        let q = self.q;
        let mut set = BTreeSet::new();
        let coeffs = all_vectors(i + 1, q);
        for theta in 1..q {
            for a in 1..q {
                for b in 1..q {
                    for c in 0..q {
                        for f in &coeffs {
                            let mut full = f.clone();
                            full.resize(self.n + 1, 0);
                            set.insert(self.element(theta, [a, 0, c, b], &full));
                        }
                    }
                }
            }
        }
        set.into_iter().collect()
    }
}

fn all_vectors(len: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn cp_element(n: usize, p: u32, theta: u32, m: [u32; 4], f: &[u32]) -> Elem {
    let dim = n + 5;
    let mut out = vec![0u16; dim * dim];
    let rho = poly_action(n, theta, m, p);
    for (i, row) in rho.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            out[i * dim + j] = x as u16;
        }
    }
    let t = n + 1;
    out[t * dim + t] = (theta % p) as u16;
    out[(t + 1) * dim + t + 1] = m[0] as u16;
    out[(t + 1) * dim + t + 2] = m[1] as u16;
    out[(t + 2) * dim + t + 1] = m[2] as u16;
    out[(t + 2) * dim + t + 2] = m[3] as u16;
    let last = dim - 1;
    for (j, &x) in f.iter().enumerate() {
        out[last * dim + j] = (x % p) as u16;
    }
    out[last * dim + last] = 1;
    out.into_boxed_slice()
}

fn prime_power_base(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut f) = (q, 0);
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

/// `D ⋉ A(n, k)` for `k = F_q`.
pub fn clelland_parker_base(n: usize, q: u32, bound: usize) -> Result<CPBase> {
    let (p, f) = prime_power_base(q)
        .ok_or_else(|| Error::ParameterOutOfRange(format!("q = {q} is not a prime power")))?;
    if p == 2 {
        return Err(Error::ParameterOutOfRange("p must be odd".into()));
    }
    if n < 2 || n > (p - 1) as usize {
        return Err(Error::ParameterOutOfRange(format!(
            "n = {n} outside 2..={}",
            p - 1
        )));
    }
    let qq = q as u64;
    let order = (qq - 1) * gl2_order(qq) * qq.pow(n as u32 + 1);
    if order > bound as u64 {
        return Err(Error::OrderBoundExceeded {
            what: format!("P({n}, F_{q}) of order {order}"),
            bound,
        });
    }
    if f > 1 {
        return Err(Error::ParameterOutOfRange(format!(
            "q = {q}: only prime fields are constructed"
        )));
    }
    let rep = Representation::Matrix { dim: n + 5, p };
    let el = |theta: u32, m: [u32; 4], f: &[u32]| cp_element(n, p, theta, m, f);
    let zero = vec![0u32; n + 1];
    let mono = |j: usize| {
        let mut v = vec![0u32; n + 1];
        v[j] = 1;
        v
    };
    let w = primitive_root(p);
    let mut d_gens = vec![el(w, [1, 0, 0, 1], &zero)];
    d_gens.extend(gl2_generators(p).into_iter().map(|m| el(1, m, &zero)));
    let a_gens: Vec<Elem> = (0..=n).map(|j| el(1, [1, 0, 0, 1], &mono(j))).collect();
    let u_gen = el(1, [1, 0, 1, 1], &zero);
    let g = |gens: Vec<Elem>| FiniteGroup::generate(rep.clone(), gens, bound).map(Arc::new);
    let d = g(d_gens.clone())?;
    let a = g(a_gens.clone())?;
    let p_group = g(d_gens.into_iter().chain(a_gens.iter().cloned()).collect())?;
    let u = g(vec![u_gen.clone()])?;
    let s = g(std::iter::once(u_gen.clone())
        .chain(a_gens.iter().cloned())
        .collect())?;
    let c: Vec<Arc<FiniteGroup>> = (0..=n)
        .map(|i| g(a_gens[..=i].to_vec()))
        .collect::<Result<_>>()?;
    let r = g(vec![u_gen.clone(), a_gens[0].clone()])?;
    let q_sub = g(vec![u_gen, a_gens[0].clone(), a_gens[1].clone()])?;
    let np_r = Arc::new(normalizer(&p_group, &r));
    let np_q = Arc::new(normalizer(&p_group, &q_sub));
    Ok(CPBase {
        p,
        q,
        n,
        d,
        a,
        p_group,
        u,
        s,
        c,
        r,
        q_sub,
        np_r,
        np_q,
    })
}

#[derive(Debug)]
pub struct PSBase {
    pub p: u32,
    pub n: usize,
    /// `β_n` on the monomial basis `x^a y^{n-a}`, indexed by `n - a`.
    pub beta: Vec<Vec<u32>>,
    /// `Q = A × F_p` as the regular permutation group on itself.
    pub q: Arc<FiniteGroup>,
    /// `C_D(Q)` by brute force, as `(t, M)` pairs.
    pub cdq: Vec<(u32, [u32; 4])>,
    /// `P₁` acting faithfully on the points of `Q`.
    pub p1: Arc<FiniteGroup>,
    pub s: Arc<FiniteGroup>,
    pub k: Arc<FiniteGroup>,
    pub c: Arc<FiniteGroup>,
    pub s_prime: Arc<FiniteGroup>,
}

struct QGroup {
    p: u32,
    n: usize,
    beta: Vec<Vec<u32>>,
}

impl QGroup {
    fn size(&self) -> usize {
        (self.p as usize).pow(self.n as u32 + 2)
    }

    fn decode(&self, mut i: usize) -> (Vec<u32>, u32) {
        let p = self.p as usize;
        let mut v = Vec::with_capacity(self.n + 1);
        for _ in 0..=self.n {
            v.push((i % p) as u32);
            i /= p;
        }
        (v, i as u32)
    }

    fn encode(&self, v: &[u32], y: u32) -> usize {
        let p = self.p as usize;
        let mut i = y as usize;
        for &x in v.iter().rev() {
            i = i * p + x as usize;
        }
        i
    }

    fn beta(&self, v: &[u32], w: &[u32]) -> u32 {
        let mut s = 0u32;
        for (i, &a) in v.iter().enumerate() {
            for (j, &b) in w.iter().enumerate() {
                s = (s + a * b % self.p * self.beta[i][j]) % self.p;
            }
        }
        s
    }

    fn mul(&self, x: usize, z: usize) -> usize {
        let ((v, y), (w, t)) = (self.decode(x), self.decode(z));
        let sum: Vec<u32> = v.iter().zip(&w).map(|(a, b)| (a + b) % self.p).collect();
        self.encode(&sum, (y + t + self.beta(&v, &w)) % self.p)
    }

    /// `(v, y)·(t, M) = (v·(t, M), t² det(M)^n y)`.
    fn act(&self, x: usize, t: u32, m: [u32; 4]) -> usize {
        let (v, y) = self.decode(x);
        let rho = poly_action(self.n, t, m, self.p);
        let mut out = vec![0u32; self.n + 1];
        for (j, &c) in v.iter().enumerate() {
            for (k, &r) in rho[j].iter().enumerate() {
                out[k] = (out[k] + c * r) % self.p;
            }
        }
        let det = (m[0] * m[3] + self.p * self.p - m[1] * m[2]) % self.p;
        let scale = t * t % self.p * pow_mod(det, self.n as u32, self.p) % self.p;
        self.encode(&out, scale * y % self.p)
    }
}

fn beta_matrix(n: usize, p: u32) -> Vec<Vec<u32>> {
    // basis index j ↔ x^{n-j} y^j, so a = n - j and d = j
    (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    let a = (n - i) as u32;
                    if a as usize == j {
                        let num = if a % 2 == 0 { 1 } else { p - 1 };
                        let den = (binom(n as u32, a) % p as u64) as u32;
                        num * inv_mod(den, p) % p
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

/// The Parker–Stroth data for a prime `p ≥ 5`.
pub fn parker_stroth_base(p: u32, bound: usize) -> Result<PSBase> {
    if !is_prime(p) || p < 5 {
        return Err(Error::ParameterOutOfRange(format!(
            "p = {p} must be a prime ≥ 5"
        )));
    }
    let n = (p - 4) as usize;
    let pp = p as u64;
    let p1_order = gl2_order(pp) * pp.pow(n as u32 + 2);
    if p1_order > bound as u64 {
        return Err(Error::OrderBoundExceeded {
            what: format!("P₁ for p = {p} of order {p1_order}"),
            bound,
        });
    }
    let qg = QGroup {
        p,
        n,
        beta: beta_matrix(n, p),
    };
    let size = qg.size();
    let rep = Representation::Permutation { degree: size };
    let right_mult = |z: usize| -> Elem { (0..size).map(|x| qg.mul(x, z) as u16).collect() };
    let basis: Vec<usize> = (0..=n)
        .map(|j| {
            let mut v = vec![0u32; n + 1];
            v[j] = 1;
            qg.encode(&v, 0)
        })
        .chain(std::iter::once(qg.encode(&vec![0; n + 1], 1)))
        .collect();
    let q = Arc::new(FiniteGroup::generate(
        rep.clone(),
        basis.iter().map(|&z| right_mult(z)).collect(),
        bound,
    )?);
    let cdq: Vec<(u32, [u32; 4])> = (1..p)
        .flat_map(|t| gl2_elements(p).into_iter().map(move |m| (t, m)))
        .filter(|&(t, m)| basis.iter().all(|&z| qg.act(z, t, m) == z))
        .collect();
    let action =
        |t: u32, m: [u32; 4]| -> Elem { (0..size).map(|x| qg.act(x, t, m) as u16).collect() };
    let w = primitive_root(p);
    let mut d_gens = vec![action(w, [1, 0, 0, 1])];
    d_gens.extend(gl2_generators(p).into_iter().map(|m| action(1, m)));
    let q_gens: Vec<Elem> = q.generators().to_vec();
    let p1 = Arc::new(FiniteGroup::generate(
        rep.clone(),
        d_gens
            .iter()
            .cloned()
            .chain(q_gens.iter().cloned())
            .collect(),
        bound,
    )?);
    let u_gen = action(1, [1, 0, 1, 1]);
    let s = Arc::new(generate_subgroup(
        &p1,
        &std::iter::once(u_gen).chain(q_gens).collect::<Vec<_>>(),
    )?);

    let mrep = Representation::Matrix { dim: 3, p };
    let mat = |rows: [[u32; 3]; 3]| -> Elem { rows.iter().flatten().map(|&x| x as u16).collect() };
    let e21 = mat([[1, 0, 0], [1, 1, 0], [0, 0, 1]]);
    let e31 = mat([[1, 0, 0], [0, 1, 0], [1, 0, 1]]);
    let e32 = mat([[1, 0, 0], [0, 1, 0], [0, 1, 1]]);
    let e23 = mat([[1, 0, 0], [0, 1, 1], [0, 0, 1]]);
    let winv = inv_mod(w, p);
    let diag = mat([[1, 0, 0], [0, w, 0], [0, 0, winv]]);
    let k = Arc::new(FiniteGroup::generate(
        mrep.clone(),
        vec![e21.clone(), e31.clone(), e32.clone(), e23, diag.clone()],
        bound,
    )?);
    let c = Arc::new(FiniteGroup::generate(
        mrep.clone(),
        vec![e21.clone(), e31.clone(), e32.clone(), diag],
        bound,
    )?);
    let s_prime = Arc::new(FiniteGroup::generate(mrep, vec![e21, e31, e32], bound)?);
    Ok(PSBase {
        p,
        n,
        beta: qg.beta.clone(),
        q,
        cdq,
        p1,
        s,
        k,
        c,
        s_prime,
    })
}

fn det3(m: &[u16], p: u32) -> u32 {
    let g = |i: usize| m[i] as i64;
    let d = g(0) * (g(4) * g(8) - g(5) * g(7)) - g(1) * (g(3) * g(8) - g(5) * g(6))
        + g(2) * (g(3) * g(7) - g(4) * g(6));
    d.rem_euclid(p as i64) as u32
}

/// All matrices of `SL₃(F_p)` with first row `(1, 0, 0)`, optionally also
/// with the `(2,3)` entry zero and `(3,3) = (2,2)^{-1}`.
pub fn sl3_shape(p: u32, c_shape: bool) -> Vec<Elem> {
    let mut out = Vec::new();
    for rest in all_vectors(6, p) {
        let [al, be, ga, de, ep, ph] = [rest[0], rest[1], rest[2], rest[3], rest[4], rest[5]];
        let m: Elem = [1, 0, 0, al, be, ga, de, ep, ph]
            .iter()
            .map(|&x| x as u16)
            .collect();
        if det3(&m, p) != 1 {
            continue;
        }
        if c_shape && (ga != 0 || be == 0 || be * ph % p != 1) {
            continue;
        }
        out.push(m);
    }
    out.sort();
    out
}

impl PSBase {
    pub fn verify(&self) -> Result<Vec<Check>> {
        let p = self.p;
        let qg = QGroup {
            p,
            n: self.n,
            beta: self.beta.clone(),
        };
        let size = qg.size();
        let mut out = Vec::new();
        out.push(Check::eq("n", (p - 4) as usize, self.n));
        let assoc = (0..size).all(|x| {
            (0..size).all(|y| {
                let xy = qg.mul(x, y);
                (0..size)
                    .step_by(if size > 200 { 7 } else { 1 })
                    .all(|z| qg.mul(xy, z) == qg.mul(x, qg.mul(y, z)))
            })
        });
        out.push(Check::eq("Q product associative", true, assoc));
        out.push(Check::eq("|Q|", size, self.q.order()));
        out.push(Check::eq("Q nonabelian", false, self.q.is_abelian()));
        // every generator of D acts by automorphisms
        let w = primitive_root(p);
        let gens: Vec<(u32, [u32; 4])> = std::iter::once((w, [1, 0, 0, 1]))
            .chain(gl2_generators(p).into_iter().map(|m| (1, m)))
            .collect();
        let autos = gens.iter().all(|&(t, m)| {
            (0..size).all(|x| {
                (0..size)
                    .all(|y| qg.act(qg.mul(x, y), t, m) == qg.mul(qg.act(x, t, m), qg.act(y, t, m)))
            })
        });
        out.push(Check::eq("D acts on Q by automorphisms", true, autos));
        let n = self.n as u32;
        let mut closed: Vec<(u32, [u32; 4])> = (1..p)
            .map(|mu| (inv_mod(pow_mod(mu, n, p), p), [mu, 0, 0, mu]))
            .collect();
        closed.sort();
        let mut found = self.cdq.clone();
        found.sort();
        out.push(Check::eq("|C_D(Q)|", (p - 1) as usize, found.len()));
        out.push(Check::eq("C_D(Q) = closed form", closed, found));
        let pp = p as usize;
        let p1_order = (gl2_order(p as u64) as usize) * pp.pow(self.n as u32 + 2);
        out.push(Check::eq("|P₁|", p1_order, self.p1.order()));
        out.push(Check::eq("|S|", pp.pow(self.n as u32 + 3), self.s.order()));
        out.push(Check::eq(
            "S Sylow in P₁",
            p_part(self.p1.order(), p),
            self.s.order(),
        ));
        out.push(Check::eq(
            "K = displayed shape",
            sl3_shape(p, false),
            self.k.elements().to_vec(),
        ));
        out.push(Check::eq(
            "C = displayed shape",
            sl3_shape(p, true),
            self.c.elements().to_vec(),
        ));
        out.push(Check::eq(
            "|K|",
            pp * pp * pp * (pp * pp - 1),
            self.k.order(),
        ));
        out.push(Check::eq("C ≤ K", true, self.c.is_subgroup_of(&self.k)));
        out.push(Check::eq("|S'|", pp.pow(3), self.s_prime.order()));
        out.push(Check::eq(
            "S' ≤ C",
            true,
            self.s_prime.is_subgroup_of(&self.c),
        ));
        out.push(Check::eq(
            "S' Sylow in C",
            p_part(self.c.order(), p),
            self.s_prime.order(),
        ));
        out.push(Check::eq(
            "S' Sylow in K",
            p_part(self.k.order(), p),
            self.s_prime.order(),
        ));
        let z = centralizer(&self.s_prime, &self.s_prime);
        out.push(Check::eq("|Z(S')|", pp, z.order()));
        let exponent = self
            .s_prime
            .elements()
            .iter()
            .map(|x| self.s_prime.element_order(x))
            .max()
            .unwrap_or(1);
        out.push(Check::eq("exponent of S'", pp, exponent));
        Ok(out)
    }
}

/// Default order bound for catalog constructions.
pub const CATALOG_ORDER_BOUND: usize = DEFAULT_ORDER_BOUND;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_for_n_one_is_symplectic() {
        // x = x^1 y^0, y = x^0 y^1: β(x, y) = -1, β(y, x) = 1
        assert_eq!(beta_matrix(1, 5), vec![vec![0, 4], vec![1, 0]]);
    }

    #[test]
    fn polynomial_action_is_a_right_action() {
        let p = 5;
        let m1 = [1, 2, 3, 4];
        let m2 = [2, 1, 1, 3];
        let prod = [
            (m1[0] * m2[0] + m1[1] * m2[2]) % p,
            (m1[0] * m2[1] + m1[1] * m2[3]) % p,
            (m1[2] * m2[0] + m1[3] * m2[2]) % p,
            (m1[2] * m2[1] + m1[3] * m2[3]) % p,
        ];
        let mm = |a: &[Vec<u32>], b: &[Vec<u32>]| -> Vec<Vec<u32>> {
            (0..a.len())
                .map(|i| {
                    (0..a.len())
                        .map(|j| (0..a.len()).map(|k| a[i][k] * b[k][j]).sum::<u32>() % p)
                        .collect()
                })
                .collect()
        };
        let lhs = mm(&poly_action(3, 2, m1, p), &poly_action(3, 3, m2, p));
        assert_eq!(lhs, poly_action(3, 6, prod, p));
    }

    #[test]
    fn parameter_checks() {
        assert!(matches!(
            clelland_parker_base(2, 6, 1 << 20),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            clelland_parker_base(3, 3, 1 << 20),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            clelland_parker_base(2, 9, 1 << 20),
            Err(Error::OrderBoundExceeded { .. })
        ));
        assert!(matches!(
            parker_stroth_base(3, 1 << 20),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            parker_stroth_base(7, 1 << 20),
            Err(Error::OrderBoundExceeded { .. })
        ));
    }
}
