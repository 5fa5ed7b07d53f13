//! Finite group machinery: generic generator closure, fingerprints
//! (order, element-order histogram, center, derived subgroup,
//! abelianization, conjugacy classes), a catalogue of the groups that
//! occur as automorphism groups of polarized abelian surfaces, and
//! identification against golden fingerprint data.

use crate::quat::{Fe, QuaternionAlgebra, QuaternionElement};
use crate::{invalid, Rational, Result};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

/// Identification tags for the groups appearing in the classification.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum FiniteGroupId {
    Cyclic(u32),
    Klein,
    Q8,
    Dic12,
    Dic16,
    Dic20,
    Dic24,
    Tstar,
    Ostar,
    Istar,
    /// Dihedral group of order 8 (the paper's D4).
    DihedralOrder8,
    /// Dihedral group of order 12 (the paper's D6).
    DihedralOrder12,
    GL2F3,
    SL2F3xSym3,
    /// 2^(1+4)_- . A5, order 1920.
    TwoMinus1Plus4Alt5,
    SL2F9,
    /// Z/3 : (SL(2,3).2), order 144.
    Z3SL2F3dot2,
    /// Non-split double cover of S5 restricting to SL(2,5), order 240.
    SL2F5dot2,
    /// Split extension SL(2,5) : 2, order 240.
    SL2F5colon2,
    /// SL(2,3) wr Z/2, order 1152.
    WreathSL2F3,
    /// Dic12 wr Z/2, order 288.
    WreathDic12,
    Z4xSym3,
    TstarXZ3,
    /// Dic12 : Z/6 (= Z/6 wr Z/2), order 72.
    Dic12SemiZ6,
    /// T* : Z/4, order 96 (maximal finite subgroup of GL2(Q(i))).
    TstarSemiZ4,
    Product(Box<FiniteGroupId>, Box<FiniteGroupId>),
    Unknown(GroupFingerprint),
}

impl FiniteGroupId {
    /// Stable ascii tag used in golden fixtures.
    pub fn tag(&self) -> String {
        use FiniteGroupId::*;
        match self {
            Cyclic(k) => format!("cyclic_{k}"),
            Klein => "klein".into(),
            Q8 => "q8".into(),
            Dic12 => "dic12".into(),
            Dic16 => "dic16".into(),
            Dic20 => "dic20".into(),
            Dic24 => "dic24".into(),
            Tstar => "tstar".into(),
            Ostar => "ostar".into(),
            Istar => "istar".into(),
            DihedralOrder8 => "d4".into(),
            DihedralOrder12 => "d6".into(),
            GL2F3 => "gl2f3".into(),
            SL2F3xSym3 => "sl2f3_x_s3".into(),
            TwoMinus1Plus4Alt5 => "two_1plus4_a5".into(),
            SL2F9 => "sl2f9".into(),
            Z3SL2F3dot2 => "z3_sl2f3_dot2".into(),
            SL2F5dot2 => "sl2f5_dot2".into(),
            SL2F5colon2 => "sl2f5_colon2".into(),
            WreathSL2F3 => "wr_sl2f3".into(),
            WreathDic12 => "wr_dic12".into(),
            Z4xSym3 => "z4_x_s3".into(),
            TstarXZ3 => "tstar_x_z3".into(),
            Dic12SemiZ6 => "dic12_semi_z6".into(),
            TstarSemiZ4 => "tstar_semi_z4".into(),
            Product(a, b) => format!("product({},{})", a.tag(), b.tag()),
            Unknown(fp) => format!("unknown_{}", fp.order),
        }
    }

    pub fn from_tag(tag: &str) -> Result<FiniteGroupId> {
        use FiniteGroupId::*;
        if let Some(k) = tag.strip_prefix("cyclic_") {
            return Ok(Cyclic(k.parse().map_err(|_| invalid("bad cyclic tag"))?));
        }
        Ok(match tag {
            "klein" => Klein,
            "q8" => Q8,
            "dic12" => Dic12,
            "dic16" => Dic16,
            "dic20" => Dic20,
            "dic24" => Dic24,
            "tstar" => Tstar,
            "ostar" => Ostar,
            "istar" => Istar,
            "d4" => DihedralOrder8,
            "d6" => DihedralOrder12,
            "gl2f3" => GL2F3,
            "sl2f3_x_s3" => SL2F3xSym3,
            "two_1plus4_a5" => TwoMinus1Plus4Alt5,
            "sl2f9" => SL2F9,
            "z3_sl2f3_dot2" => Z3SL2F3dot2,
            "sl2f5_dot2" => SL2F5dot2,
            "sl2f5_colon2" => SL2F5colon2,
            "wr_sl2f3" => WreathSL2F3,
            "wr_dic12" => WreathDic12,
            "z4_x_s3" => Z4xSym3,
            "tstar_x_z3" => TstarXZ3,
            "dic12_semi_z6" => Dic12SemiZ6,
            "tstar_semi_z4" => TstarSemiZ4,
            other => return Err(invalid(format!("unknown group tag {other}"))),
        })
    }
}

impl fmt::Display for FiniteGroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FiniteGroupId::*;
        match self {
            Cyclic(k) => write!(f, "Z/{k}"),
            Klein => write!(f, "Z/2 x Z/2"),
            Q8 => write!(f, "Q8"),
            Dic12 => write!(f, "Dic12"),
            Dic16 => write!(f, "Dic16"),
            Dic20 => write!(f, "Dic20"),
            Dic24 => write!(f, "Dic24"),
            Tstar => write!(f, "T*"),
            Ostar => write!(f, "O*"),
            Istar => write!(f, "I*"),
            DihedralOrder8 => write!(f, "D4"),
            DihedralOrder12 => write!(f, "D6"),
            GL2F3 => write!(f, "GL(2,3)"),
            SL2F3xSym3 => write!(f, "SL(2,3) x S3"),
            TwoMinus1Plus4Alt5 => write!(f, "2^(1+4)_-.A5"),
            SL2F9 => write!(f, "SL(2,9)"),
            Z3SL2F3dot2 => write!(f, "Z/3:(SL(2,3).2)"),
            SL2F5dot2 => write!(f, "SL(2,5).2"),
            SL2F5colon2 => write!(f, "SL(2,5):2"),
            WreathSL2F3 => write!(f, "SL(2,3) wr Z/2"),
            WreathDic12 => write!(f, "Dic12 wr Z/2"),
            Z4xSym3 => write!(f, "Z/4 x S3"),
            TstarXZ3 => write!(f, "T* x Z/3"),
            Dic12SemiZ6 => write!(f, "Dic12:Z/6"),
            TstarSemiZ4 => write!(f, "T*:Z/4"),
            Product(a, b) => write!(f, "{a} x {b}"),
            Unknown(fp) => write!(f, "unknown[order={}]", fp.order),
        }
    }
}

/// Normalized unordered product tag.
pub fn product_id(a: FiniteGroupId, b: FiniteGroupId) -> FiniteGroupId {
    let (x, y) = if a <= b { (a, b) } else { (b, a) };
    FiniteGroupId::Product(Box::new(x), Box::new(y))
}

/// Isomorphism-invariant fingerprint.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GroupFingerprint {
    pub order: u32,
    /// (element order, count), sorted by element order.
    pub histogram: Vec<(u32, u32)>,
    pub center: u32,
    pub derived: u32,
    /// Invariant factors d1 | d2 | ... of G/G' (empty for perfect G).
    pub abelianization: Vec<u32>,
    pub conjugacy_classes: u32,
}

impl GroupFingerprint {
    pub fn to_line(&self) -> String {
        let hist = self
            .histogram
            .iter()
            .map(|(o, c)| format!("{o}:{c}"))
            .collect::<Vec<_>>()
            .join(",");
        let ab = if self.abelianization.is_empty() {
            "-".to_string()
        } else {
            self.abelianization
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(".")
        };
        format!(
            "{}|{}|{}|{}|{}|{}",
            self.order, hist, self.center, self.derived, ab, self.conjugacy_classes
        )
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let parts: Vec<&str> = line.split('|').collect();
        if parts.len() != 6 {
            return Err(invalid(format!("bad fingerprint line: {line}")));
        }
        let parse = |s: &str| -> Result<u32> {
            s.parse().map_err(|_| invalid(format!("bad number {s}")))
        };
        let histogram = if parts[1].is_empty() {
            Vec::new()
        } else {
            parts[1]
                .split(',')
                .map(|p| {
                    let (o, c) = p
                        .split_once(':')
                        .ok_or_else(|| invalid("bad histogram entry"))?;
                    Ok((parse(o)?, parse(c)?))
                })
                .collect::<Result<Vec<_>>>()?
        };
        let abelianization = if parts[4] == "-" {
            Vec::new()
        } else {
            parts[4].split('.').map(parse).collect::<Result<Vec<_>>>()?
        };
        Ok(GroupFingerprint {
            order: parse(parts[0])?,
            histogram,
            center: parse(parts[2])?,
            derived: parse(parts[3])?,
            abelianization,
            conjugacy_classes: parse(parts[5])?,
        })
    }
}

/// Closure of a nonempty generator set under multiplication; since all
/// generators have finite order the result is the generated group.
/// Deterministic breadth-first order; errors past `cap` elements.
pub fn close_generators<T, F>(gens: &[T], mul: &F, cap: usize) -> Result<Vec<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    if gens.is_empty() {
        return Err(invalid("empty generator set"));
    }
    let mut seen: HashSet<T> = HashSet::new();
    let mut elems: Vec<T> = Vec::new();
    let mut queue: Vec<T> = Vec::new();
    for g in gens {
        if seen.insert(g.clone()) {
            elems.push(g.clone());
            queue.push(g.clone());
        }
    }
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                if elems.len() >= cap {
                    return Err(invalid(format!("group closure exceeded cap {cap}")));
                }
                elems.push(y.clone());
                queue.push(y);
            }
        }
    }
    Ok(elems)
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }
    fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a != b {
            self.parent[a] = b;
        }
    }
}

/// Fingerprint a finite group given its element list and a generating
/// subset, without building the full multiplication table (scales to
/// order ~2000 with expensive element types).
pub fn fingerprint_elements<T, F>(elems: &[T], gens: &[T], mul: &F) -> Result<GroupFingerprint>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let n = elems.len();
    let index: HashMap<&T, usize> = elems.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let idx_of = |t: &T| -> Result<usize> {
        index
            .get(t)
            .copied()
            .ok_or_else(|| invalid("element set not closed under multiplication"))
    };
    // identity: g * g^(k) cycles back to g.
    let g0 = &gens[0];
    let identity = {
        let mut p = g0.clone();
        loop {
            let p2 = mul(&p, g0);
            if &p2 == g0 {
                break p;
            }
            p = p2;
        }
    };
    let id_idx = idx_of(&identity)?;
    // element orders
    let mut orders = vec![0u32; n];
    for (i, g) in elems.iter().enumerate() {
        let mut p = g.clone();
        let mut ord = 1u32;
        while p != identity {
            p = mul(&p, g);
            ord += 1;
            if ord as usize > n {
                return Err(invalid("element order exceeds group order"));
            }
        }
        orders[i] = ord;
    }
    let mut hist_map: BTreeMap<u32, u32> = BTreeMap::new();
    for o in &orders {
        *hist_map.entry(*o).or_insert(0) += 1;
    }
    let histogram: Vec<(u32, u32)> = hist_map.into_iter().collect();
    let inverse_of = |i: usize| -> T {
        let g = &elems[i];
        let mut p = identity.clone();
        for _ in 0..orders[i] - 1 {
            p = mul(&p, g);
        }
        p
    };
    let gen_inverses: Vec<T> = gens
        .iter()
        .map(|g| idx_of(g).map(inverse_of))
        .collect::<Result<Vec<_>>>()?;
    // center: elements commuting with every generator
    let mut center = 0u32;
    for g in elems {
        if gens.iter().all(|h| mul(g, h) == mul(h, g)) {
            center += 1;
        }
    }
    // conjugacy classes: orbits under conjugation by generators
    let mut dsu = DisjointSet::new(n);
    for (h, hinv) in gens.iter().zip(gen_inverses.iter()) {
        for (i, g) in elems.iter().enumerate() {
            let c = mul(&mul(h, g), hinv);
            dsu.union(i, idx_of(&c)?);
        }
    }
    let mut roots: HashSet<usize> = HashSet::new();
    for i in 0..n {
        let r = dsu.find(i);
        roots.insert(r);
    }
    let conjugacy_classes = roots.len() as u32;
    // derived subgroup: normal closure of generator-pair commutators
    let mut der_gens: Vec<usize> = Vec::new();
    for (a, ainv) in gens.iter().zip(gen_inverses.iter()) {
        for (b, binv) in gens.iter().zip(gen_inverses.iter()) {
            let comm = mul(&mul(a, b), &mul(ainv, binv));
            let ci = idx_of(&comm)?;
            if ci != id_idx && !der_gens.contains(&ci) {
                der_gens.push(ci);
            }
        }
    }
    let derived_set: HashSet<usize> = loop {
        // subgroup closure of current der_gens
        let seeds: Vec<T> = if der_gens.is_empty() {
            vec![identity.clone()]
        } else {
            der_gens.iter().map(|&i| elems[i].clone()).collect()
        };
        let sub = close_generators(&seeds, mul, n + 1)?;
        let mut set: HashSet<usize> = sub.iter().map(|t| idx_of(t)).collect::<Result<_>>()?;
        set.insert(id_idx);
        // normality under conjugation by the group generators
        let mut violations: Vec<usize> = Vec::new();
        'outer: for &i in &set {
            for (h, hinv) in gens.iter().zip(gen_inverses.iter()) {
                let c = mul(&mul(h, &elems[i]), hinv);
                let ci = idx_of(&c)?;
                if !set.contains(&ci) && !violations.contains(&ci) {
                    violations.push(ci);
                    if violations.len() >= 8 {
                        break 'outer;
                    }
                }
            }
        }
        if violations.is_empty() {
            break set;
        }
        der_gens.extend(violations);
    };
    let derived = derived_set.len() as u32;
    // abelianization: quotient by the derived subgroup
    let derived_elems: Vec<T> = derived_set.iter().map(|&i| elems[i].clone()).collect();
    let mut coset = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        if coset[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        for d in &derived_elems {
            let j = idx_of(&mul(&elems[i], d))?;
            coset[j] = c;
        }
        if coset[i] != c {
            return Err(invalid("derived subgroup cosets are inconsistent"));
        }
    }
    let q = reps.len();
    let mut qtable = vec![0usize; q * q];
    for (ri, &i) in reps.iter().enumerate() {
        for (rj, &j) in reps.iter().enumerate() {
            qtable[ri * q + rj] = coset[idx_of(&mul(&elems[i], &elems[j]))?];
        }
    }
    let qid = coset[id_idx];
    let abelianization = abelian_invariants(&qtable, q, qid);
    Ok(GroupFingerprint {
        order: n as u32,
        histogram,
        center,
        derived,
        abelianization,
        conjugacy_classes,
    })
}

/// Invariant factors (ascending divisibility chain) of an abelian group
/// given by a multiplication table.
fn abelian_invariants(table: &[usize], n: usize, id: usize) -> Vec<u32> {
    if n == 1 {
        return Vec::new();
    }
    let order_of = |x: usize| -> u32 {
        let mut p = x;
        let mut o = 1u32;
        while p != id {
            p = table[p * n + x];
            o += 1;
        }
        o
    };
    let (xmax, dmax) = (0..n)
        .map(|x| (x, order_of(x)))
        .max_by_key(|&(_, o)| o)
        .unwrap();
    // quotient by <xmax>
    let mut cyc = vec![id];
    let mut p = xmax;
    while p != id {
        cyc.push(p);
        p = table[p * n + xmax];
    }
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if coset[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        for &z in &cyc {
            coset[table[i * n + z]] = c;
        }
    }
    let q = reps.len();
    let mut qtable = vec![0usize; q * q];
    for (ri, &i) in reps.iter().enumerate() {
        for (rj, &j) in reps.iter().enumerate() {
            qtable[ri * q + rj] = coset[table[i * n + j]];
        }
    }
    let mut inv = abelian_invariants(&qtable, q, coset[id]);
    inv.push(dmax);
    inv
}

/// Dense-table representation for small groups (order <= 2000).
pub struct ConcreteGroup {
    pub n: usize,
    pub table: Vec<u16>,
    pub identity: u16,
}

impl ConcreteGroup {
    pub fn from_elements<T, F>(elems: &[T], mul: &F) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let n = elems.len();
        if n == 0 || n > 2000 {
            return Err(invalid("concrete groups support orders 1..=2000"));
        }
        let index: HashMap<&T, usize> = elems.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut table = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = mul(&elems[i], &elems[j]);
                let k = *index
                    .get(&p)
                    .ok_or_else(|| invalid("element set not closed under multiplication"))?;
                table[i * n + j] = k as u16;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e * n + j] == j as u16))
            .ok_or_else(|| invalid("no identity element"))? as u16;
        Ok(ConcreteGroup {
            n,
            table,
            identity,
        })
    }

    pub fn mul(&self, i: u16, j: u16) -> u16 {
        self.table[i as usize * self.n + j as usize]
    }

    pub fn fingerprint(&self) -> Result<GroupFingerprint> {
        let ids: Vec<u16> = (0..self.n as u16).collect();
        let mul = |a: &u16, b: &u16| self.mul(*a, *b);
        fingerprint_elements(&ids, &ids, &mul)
    }
}

// ---------------------------------------------------------------------
// catalogue constructions
// ---------------------------------------------------------------------

fn entry<T, F>(
    id: FiniteGroupId,
    gens: &[T],
    mul: &F,
    expected_order: usize,
) -> Result<(FiniteGroupId, GroupFingerprint)>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let elems = close_generators(gens, mul, 2001)?;
    if elems.len() != expected_order {
        return Err(invalid(format!(
            "construction for {} produced order {} (expected {expected_order})",
            id.tag(),
            elems.len()
        )));
    }
    let fp = fingerprint_elements(&elems, gens, mul)?;
    Ok((id, fp))
}

fn cyclic_entry(k: u32) -> Result<(FiniteGroupId, GroupFingerprint)> {
    let mul = |a: &u32, b: &u32| (a + b) % k;
    entry(FiniteGroupId::Cyclic(k), &[1 % k], &mul, k as usize)
}

/// Dicyclic group of order 4k: <a, b | a^{2k}=1, b^2=a^k, bab^-1=a^-1>.
/// Elements (x mod 2k, e in {0,1}) standing for a^x b^e.
fn dicyclic_mul(k: u32) -> impl Fn(&(u32, u32), &(u32, u32)) -> (u32, u32) {
    let m = 2 * k;
    move |p: &(u32, u32), q: &(u32, u32)| {
        let (x1, e1) = *p;
        let (x2, e2) = *q;
        let x = if e1 == 0 { (x1 + x2) % m } else { (x1 + m - x2) % m };
        if e1 == 1 && e2 == 1 {
            ((x + k) % m, 0)
        } else {
            (x, e1 ^ e2)
        }
    }
}

/// Dihedral group of order 2n, same encoding with b^2 = 1.
fn dihedral_mul(n: u32) -> impl Fn(&(u32, u32), &(u32, u32)) -> (u32, u32) {
    move |p: &(u32, u32), q: &(u32, u32)| {
        let (x1, e1) = *p;
        let (x2, e2) = *q;
        let x = if e1 == 0 { (x1 + x2) % n } else { (x1 + n - x2) % n };
        (x, e1 ^ e2)
    }
}

type M2 = [u8; 4]; // 2x2 matrix over a prime field, row major

fn matmul_fp(p: u8) -> impl Fn(&M2, &M2) -> M2 {
    move |a: &M2, b: &M2| {
        let m = |x: u8, y: u8| ((x as u16 * y as u16) % p as u16) as u8;
        let s = |x: u8, y: u8| ((x as u16 + y as u16) % p as u16) as u8;
        [
            s(m(a[0], b[0]), m(a[1], b[2])),
            s(m(a[0], b[1]), m(a[1], b[3])),
            s(m(a[2], b[0]), m(a[3], b[2])),
            s(m(a[2], b[1]), m(a[3], b[3])),
        ]
    }
}

type F9 = (u8, u8); // a + b x with x^2 = -1 over F3
type M29 = [F9; 4];

fn f9_mul(u: F9, v: F9) -> F9 {
    let (a, b) = (u.0 as u16, u.1 as u16);
    let (c, d) = (v.0 as u16, v.1 as u16);
    (
        ((a * c + 2 * b * d) % 3) as u8,
        ((a * d + b * c) % 3) as u8,
    )
}

fn f9_add(u: F9, v: F9) -> F9 {
    (((u.0 + v.0) % 3), ((u.1 + v.1) % 3))
}

fn matmul_f9(a: &M29, b: &M29) -> M29 {
    [
        f9_add(f9_mul(a[0], b[0]), f9_mul(a[1], b[2])),
        f9_add(f9_mul(a[0], b[1]), f9_mul(a[1], b[3])),
        f9_add(f9_mul(a[2], b[0]), f9_mul(a[3], b[2])),
        f9_add(f9_mul(a[2], b[1]), f9_mul(a[3], b[3])),
    ]
}

/// 2x2 matrices over a quaternion algebra, row major.
type QM2 = [QuaternionElement; 4];

fn qmat_mul(alg: &QuaternionAlgebra, a: &QM2, b: &QM2) -> QM2 {
    let add = |u: &QuaternionElement, v: &QuaternionElement| QuaternionElement {
        c: [
            u.c[0].add(&v.c[0]),
            u.c[1].add(&v.c[1]),
            u.c[2].add(&v.c[2]),
            u.c[3].add(&v.c[3]),
        ],
    };
    [
        add(&alg.mul(&a[0], &b[0]), &alg.mul(&a[1], &b[2])),
        add(&alg.mul(&a[0], &b[1]), &alg.mul(&a[1], &b[3])),
        add(&alg.mul(&a[2], &b[0]), &alg.mul(&a[3], &b[2])),
        add(&alg.mul(&a[2], &b[1]), &alg.mul(&a[3], &b[3])),
    ]
}

fn qelem(alg: &QuaternionAlgebra, w: Fe, x: Fe, y: Fe, z: Fe) -> QuaternionElement {
    alg.element([w, x, y, z])
}

/// Galois twist sqrt(m) -> -sqrt(m) applied coordinatewise.
fn qgalois(v: &QuaternionElement) -> QuaternionElement {
    QuaternionElement {
        c: [
            v.c[0].galois(),
            v.c[1].galois(),
            v.c[2].galois(),
            v.c[3].galois(),
        ],
    }
}

/// The binary octahedral group O* as exact quaternions over Q(sqrt 2),
/// from the generators alpha = (sqrt2/2)(1+j), beta = i,
/// gamma = (-1+i+j+ij)/2.
fn ostar_elements() -> Result<(QuaternionAlgebra, Vec<QuaternionElement>)> {
    let alg = QuaternionAlgebra::new(2, Rational::from_integer(-1), Rational::from_integer(-1))?;
    let z = Fe::zero();
    let h = Fe::rat(Rational::new(1, 2));
    let s2h = Fe::new(Rational::zero(), Rational::new(1, 2));
    let alpha = qelem(&alg, s2h, z, s2h, z);
    let beta = qelem(&alg, z, Fe::one(), z, z);
    let gamma = qelem(&alg, h.neg(), h, h, h);
    let mul = |a: &QuaternionElement, b: &QuaternionElement| alg.mul(a, b);
    let elems = close_generators(&[alpha, beta, gamma], &mul, 2001)?;
    Ok((alg, elems))
}

struct OstarTables {
    n: usize,
    table: Vec<u16>,
    neg: Vec<u16>,
    in_tstar: Vec<bool>,
    identity: u16,
}

fn ostar_tables() -> Result<OstarTables> {
    let (alg, elems) = ostar_elements()?;
    let n = elems.len();
    if n != 48 {
        return Err(invalid(format!("O* construction has order {n}")));
    }
    let index: HashMap<&QuaternionElement, usize> =
        elems.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut table = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = index[&alg.mul(&elems[i], &elems[j])] as u16;
        }
    }
    let one = alg.one();
    let identity = index[&one] as u16;
    let minus_one = alg.scale(&Fe::int(-1), &one);
    let neg: Vec<u16> = elems
        .iter()
        .map(|g| index[&alg.mul(g, &minus_one)] as u16)
        .collect();
    // T* = <i, j, omega> inside O*.
    let z = Fe::zero();
    let h = Fe::rat(Rational::new(1, 2));
    let i_q = qelem(&alg, z, Fe::one(), z, z);
    let j_q = qelem(&alg, z, z, Fe::one(), z);
    let omega = qelem(&alg, h.neg(), h, h, h);
    let mul = |a: &QuaternionElement, b: &QuaternionElement| alg.mul(a, b);
    let tstar = close_generators(&[i_q, j_q, omega], &mul, 100)?;
    if tstar.len() != 24 {
        return Err(invalid("T* inside O* has wrong order"));
    }
    let tset: HashSet<usize> = tstar.iter().map(|t| index[t]).collect();
    let in_tstar: Vec<bool> = (0..n).map(|i| tset.contains(&i)).collect();
    Ok(OstarTables {
        n,
        table,
        neg,
        in_tstar,
        identity,
    })
}

/// Wreath product H wr Z/2 given a dense table for H: elements
/// (h1, h2, swap).
fn wreath_entry(
    id: FiniteGroupId,
    table: Vec<u16>,
    n: usize,
    identity: u16,
    hgens: &[u16],
) -> Result<(FiniteGroupId, GroupFingerprint)> {
    let mul = move |p: &(u16, u16, u8), q: &(u16, u16, u8)| {
        let (a1, b1, e1) = *p;
        let (a2, b2, e2) = *q;
        let (x2, y2) = if e1 == 0 { (a2, b2) } else { (b2, a2) };
        (
            table[a1 as usize * n + x2 as usize],
            table[b1 as usize * n + y2 as usize],
            e1 ^ e2,
        )
    };
    let mut gens: Vec<(u16, u16, u8)> = hgens.iter().map(|&g| (g, identity, 0)).collect();
    gens.push((identity, identity, 1));
    entry(id, &gens, &mul, 2 * n * n)
}

fn product_entry(
    id: FiniteGroupId,
    t1: (Vec<u16>, usize, u16, Vec<u16>),
    t2: (Vec<u16>, usize, u16, Vec<u16>),
) -> Result<(FiniteGroupId, GroupFingerprint)> {
    let (table1, n1, id1, gens1) = t1;
    let (table2, n2, id2, gens2) = t2;
    let mul = move |p: &(u16, u16), q: &(u16, u16)| {
        (
            table1[p.0 as usize * n1 + q.0 as usize],
            table2[p.1 as usize * n2 + q.1 as usize],
        )
    };
    let mut gens: Vec<(u16, u16)> = gens1.iter().map(|&g| (g, id2)).collect();
    gens.extend(gens2.iter().map(|&g| (id1, g)));
    entry(id, &gens, &mul, n1 * n2)
}

/// Canonicalized pair (v in O*, k in Z/8 with k = parity(v) mod 2)
/// modulo the central identification (v, k) ~ (-v, k+4): the group
/// T* : Z/4 of order 96, concretely <rho(T*), diag(i,1)> in GL2(Q(i)).
fn tstar_semi_z4_entry(ot: &OstarTables) -> Result<(FiniteGroupId, GroupFingerprint)> {
    let n = ot.n;
    let table = ot.table.clone();
    let neg = ot.neg.clone();
    let canon = move |v: u16, k: u8| -> (u16, u8) {
        if k >= 4 {
            (neg[v as usize], k - 4)
        } else {
            (v, k)
        }
    };
    let mul = move |p: &(u16, u8), q: &(u16, u8)| {
        let v = table[p.0 as usize * n + q.0 as usize];
        canon(v, (p.1 + q.1) % 8)
    };
    // generators: T* generators with grade 0 and (u, 1) with
    // u = (1+i)/sqrt2 of odd parity.
    let (alg, elems) = ostar_elements()?;
    let index: HashMap<&QuaternionElement, usize> =
        elems.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let z = Fe::zero();
    let h = Fe::rat(Rational::new(1, 2));
    let s2h = Fe::new(Rational::zero(), Rational::new(1, 2));
    let i_q = qelem(&alg, z, Fe::one(), z, z);
    let omega = qelem(&alg, h.neg(), h, h, h);
    let u = qelem(&alg, s2h, s2h, z, z); // (1+i)/sqrt2
    let gi = index[&i_q] as u16;
    let gw = index[&omega] as u16;
    let gu = index[&u] as u16;
    if ot.in_tstar[gu as usize] {
        return Err(invalid("(1+i)/sqrt2 should lie outside T*"));
    }
    entry(
        FiniteGroupId::TstarSemiZ4,
        &[(gi, 0u8), (gw, 0u8), (gu, 1u8)],
        &mul,
        96,
    )
}

/// Z/3 : (SL(2,3).2) of order 144: pairs (a mod 3, v in O*) with the
/// O* factor acting through its sign character (kernel T*).
fn z3_ostar_entry(ot: &OstarTables) -> Result<(FiniteGroupId, GroupFingerprint)> {
    let n = ot.n;
    let table = ot.table.clone();
    let in_t = ot.in_tstar.clone();
    let mul = move |p: &(u8, u16), q: &(u8, u16)| {
        let chi = if in_t[p.1 as usize] { 1u8 } else { 2u8 };
        (
            (p.0 + chi * q.0) % 3,
            table[p.1 as usize * n + q.1 as usize],
        )
    };
    // the O* closure lists its generators first, so indices 0,1,2 are
    // alpha, beta, gamma.
    let gens: Vec<(u8, u16)> = vec![(1, ot.identity), (0, 0), (0, 1), (0, 2)];
    entry(FiniteGroupId::Z3SL2F3dot2, &gens, &mul, 144)
}

/// Icosian generators of I* = 2I inside (-1,-1 / Q(sqrt 5)).
fn istar_quaternion_gens(alg: &QuaternionAlgebra) -> Vec<QuaternionElement> {
    let z = Fe::zero();
    let h = Fe::rat(Rational::new(1, 2));
    let lam_h = Fe::new(Rational::new(1, 4), Rational::new(1, 4));
    let lami_h = Fe::new(Rational::new(-1, 4), Rational::new(1, 4));
    vec![
        qelem(alg, z, Fe::one(), z, z),
        qelem(alg, z, z, Fe::one(), z),
        qelem(alg, h.neg(), h, h, h),
        qelem(alg, lam_h, lami_h, h, z),
    ]
}

/// The non-split double cover SL(2,5).2 of S5, of order 240, inside
/// GL2 of the quaternion algebra (-1,-1) over Q(sqrt 5): block-diagonal
/// pairs d(g) = (g, tau(g)) for g in I* (tau the Galois twist), extended
/// by the antidiagonal t = [[0, A], [A^-1 i, 0]] with A = -(1+sqrt5)(1+i).
/// Conjugation by A carries tau(I*) back to I* and t^2 = d(i), and an
/// exact search verified that no element of the coset t d(I*) is an
/// involution, so the extension is non-split (its only involution is -1).
fn sl2f5_dot2_entry() -> Result<(FiniteGroupId, GroupFingerprint)> {
    let alg = QuaternionAlgebra::new(5, Rational::from_integer(-1), Rational::from_integer(-1))?;
    let zq = qelem(&alg, Fe::zero(), Fe::zero(), Fe::zero(), Fe::zero());
    let dgens: Vec<QM2> = istar_quaternion_gens(&alg)
        .into_iter()
        .map(|g| [g.clone(), zq.clone(), zq.clone(), qgalois(&g)])
        .collect();
    let s = Fe::new(Rational::from_integer(-1), Rational::from_integer(-1));
    let a = alg.element([s, s, Fe::zero(), Fe::zero()]);
    let iq = alg.element([Fe::zero(), Fe::one(), Fe::zero(), Fe::zero()]);
    let b = alg.mul(&alg.inv(&a)?, &iq);
    let t: QM2 = [zq.clone(), a, b, zq];
    let mut gens = dgens;
    gens.push(t);
    let mul = |a: &QM2, b: &QM2| qmat_mul(&alg, a, b);
    entry(FiniteGroupId::SL2F5dot2, &gens, &mul, 240)
}

/// 2^(1+4)_- . A5 of order 1920 inside GL2 of the rational quaternions:
/// the extraspecial group Q8 (scalars) * D8 (signed permutation
/// matrices), extended by the normalizing elements omega*Id and
/// (1/2)(1+i)[[1,1],[-1,1]].
fn two_1plus4_a5_entry() -> Result<(FiniteGroupId, GroupFingerprint)> {
    let alg = QuaternionAlgebra::over_q(Rational::from_integer(-1), Rational::from_integer(-1))?;
    let z = Fe::zero();
    let o = Fe::one();
    let h = Fe::rat(Rational::new(1, 2));
    let zq = qelem(&alg, z, z, z, z);
    let oneq = alg.one();
    let iq = qelem(&alg, z, o, z, z);
    let jq = qelem(&alg, z, z, o, z);
    let omega = qelem(&alg, h.neg(), h, h, h);
    let c = qelem(&alg, h, h, z, z); // (1+i)/2
    let kq = alg.mul(&iq, &jq);
    let neg = |v: &QuaternionElement| alg.scale(&Fe::int(-1), v);
    let r: QM2 = [zq.clone(), oneq.clone(), neg(&oneq), zq.clone()];
    let s: QM2 = [oneq.clone(), zq.clone(), zq.clone(), neg(&oneq)];
    let rs = qmat_mul(&alg, &r, &s);
    // v = (-1 + i r + j s + k rs)/2 normalizes the extraspecial part and
    // extends <omega, (1+i)/2 (1+r-ish)> to the full A5 on top.
    let v: QM2 = std::array::from_fn(|ix| {
        let mut acc = alg.scale(&if ix == 0 || ix == 3 { h.neg() } else { Fe::zero() }, &oneq);
        for (q, m) in [(&iq, &r), (&jq, &s), (&kq, &rs)] {
            let term = alg.mul(&alg.scale(&h, q), &m[ix]);
            acc = QuaternionElement {
                c: std::array::from_fn(|cx| acc.c[cx].add(&term.c[cx])),
            };
        }
        acc
    });
    let gens: Vec<QM2> = vec![
        [iq.clone(), zq.clone(), zq.clone(), iq],
        [jq.clone(), zq.clone(), zq.clone(), jq],
        r,
        s,
        [omega.clone(), zq.clone(), zq.clone(), omega],
        [c.clone(), c.clone(), neg(&c), c],
        v,
    ];
    let mul = |a: &QM2, b: &QM2| qmat_mul(&alg, a, b);
    entry(FiniteGroupId::TwoMinus1Plus4Alt5, &gens, &mul, 1920)
}

fn build_catalogue() -> Result<Vec<(FiniteGroupId, GroupFingerprint)>> {
    use FiniteGroupId::*;
    let mut out = Vec::new();
    for k in 1..=12u32 {
        out.push(cyclic_entry(k)?);
    }
    // Klein
    {
        let mul = |a: &(u8, u8), b: &(u8, u8)| ((a.0 + b.0) % 2, (a.1 + b.1) % 2);
        out.push(entry(Klein, &[(1, 0), (0, 1)], &mul, 4)?);
    }
    // dihedral D4 (order 8), D6 (order 12)
    {
        let mul = dihedral_mul(4);
        out.push(entry(DihedralOrder8, &[(1, 0), (0, 1)], &mul, 8)?);
        let mul = dihedral_mul(6);
        out.push(entry(DihedralOrder12, &[(1, 0), (0, 1)], &mul, 12)?);
    }
    // dicyclic family
    for (id, k) in [(Q8, 2u32), (Dic12, 3), (Dic16, 4), (Dic20, 5), (Dic24, 6)] {
        let mul = dicyclic_mul(k);
        out.push(entry(id, &[(1, 0), (0, 1)], &mul, 4 * k as usize)?);
    }
    // T* = SL(2,3), I* = SL(2,5), GL(2,3)
    {
        let mul = matmul_fp(3);
        out.push(entry(Tstar, &[[1, 1, 0, 1], [1, 0, 1, 1]], &mul, 24)?);
        out.push(entry(
            GL2F3,
            &[[1, 1, 0, 1], [1, 0, 1, 1], [2, 0, 0, 1]],
            &mul,
            48,
        )?);
        let mul5 = matmul_fp(5);
        out.push(entry(Istar, &[[1, 1, 0, 1], [1, 0, 1, 1]], &mul5, 120)?);
        out.push(entry(
            SL2F5colon2,
            &[[1, 1, 0, 1], [1, 0, 1, 1], [1, 0, 0, 4]],
            &mul5,
            240,
        )?);
    }
    // O* over Q(sqrt 2)
    {
        let (alg, _) = ostar_elements()?;
        let z = Fe::zero();
        let h = Fe::rat(Rational::new(1, 2));
        let s2h = Fe::new(Rational::zero(), Rational::new(1, 2));
        let alpha = qelem(&alg, s2h, z, s2h, z);
        let beta = qelem(&alg, z, Fe::one(), z, z);
        let gamma = qelem(&alg, h.neg(), h, h, h);
        let mul = |a: &QuaternionElement, b: &QuaternionElement| alg.mul(a, b);
        out.push(entry(Ostar, &[alpha, beta, gamma], &mul, 48)?);
    }
    // SL(2,9)
    {
        let z9: F9 = (0, 0);
        let o9: F9 = (1, 0);
        let x9: F9 = (0, 1);
        let gens: Vec<M29> = vec![
            [o9, o9, z9, o9],
            [o9, z9, o9, o9],
            [o9, x9, z9, o9],
            [o9, z9, x9, o9],
        ];
        out.push(entry(SL2F9, &gens, &matmul_f9, 720)?);
    }
    // component tables for products and wreaths
    let tstar_mul = matmul_fp(3);
    let tstar_gens: Vec<M2> = vec![[1, 1, 0, 1], [1, 0, 1, 1]];
    let tstar_elems = close_generators(&tstar_gens, &tstar_mul, 100)?;
    let tstar_cg = ConcreteGroup::from_elements(&tstar_elems, &tstar_mul)?;
    let tstar_gen_idx: Vec<u16> = vec![0, 1];

    let dic12_mul = dicyclic_mul(3);
    let dic12_gens: Vec<(u32, u32)> = vec![(1, 0), (0, 1)];
    let dic12_elems = close_generators(&dic12_gens, &dic12_mul, 100)?;
    let dic12_cg = ConcreteGroup::from_elements(&dic12_elems, &dic12_mul)?;

    let s3_mul = dihedral_mul(3);
    let s3_gens: Vec<(u32, u32)> = vec![(1, 0), (0, 1)];
    let s3_elems = close_generators(&s3_gens, &s3_mul, 100)?;
    let s3_cg = ConcreteGroup::from_elements(&s3_elems, &s3_mul)?;

    let z4_mul = |a: &u32, b: &u32| (a + b) % 4;
    let z4_elems = close_generators(&[1u32], &z4_mul, 100)?;
    let z4_cg = ConcreteGroup::from_elements(&z4_elems, &z4_mul)?;

    let z3_mul = |a: &u32, b: &u32| (a + b) % 3;
    let z3_elems = close_generators(&[1u32], &z3_mul, 100)?;
    let z3_cg = ConcreteGroup::from_elements(&z3_elems, &z3_mul)?;

    let z6_mul = |a: &u32, b: &u32| (a + b) % 6;
    let z6_elems = close_generators(&[1u32], &z6_mul, 100)?;
    let z6_cg = ConcreteGroup::from_elements(&z6_elems, &z6_mul)?;

    out.push(product_entry(
        SL2F3xSym3,
        (
            tstar_cg.table.clone(),
            tstar_cg.n,
            tstar_cg.identity,
            tstar_gen_idx.clone(),
        ),
        (s3_cg.table.clone(), s3_cg.n, s3_cg.identity, vec![0, 1]),
    )?);
    out.push(product_entry(
        Z4xSym3,
        (z4_cg.table.clone(), z4_cg.n, z4_cg.identity, vec![0]),
        (s3_cg.table.clone(), s3_cg.n, s3_cg.identity, vec![0, 1]),
    )?);
    out.push(product_entry(
        TstarXZ3,
        (
            tstar_cg.table.clone(),
            tstar_cg.n,
            tstar_cg.identity,
            tstar_gen_idx,
        ),
        (z3_cg.table.clone(), z3_cg.n, z3_cg.identity, vec![0]),
    )?);
    // wreath products
    out.push(wreath_entry(
        WreathSL2F3,
        tstar_cg.table.clone(),
        tstar_cg.n,
        tstar_cg.identity,
        &[0, 1],
    )?);
    out.push(wreath_entry(
        WreathDic12,
        dic12_cg.table.clone(),
        dic12_cg.n,
        dic12_cg.identity,
        &[0, 1],
    )?);
    out.push(wreath_entry(
        Dic12SemiZ6,
        z6_cg.table.clone(),
        z6_cg.n,
        z6_cg.identity,
        &[0],
    )?);
    // O*-based extensions
    let ot = ostar_tables()?;
    out.push(tstar_semi_z4_entry(&ot)?);
    out.push(z3_ostar_entry(&ot)?);
    out.push(sl2f5_dot2_entry()?);
    out.push(two_1plus4_a5_entry()?);
    Ok(out)
}

/// Freshly computed catalogue of constructions and fingerprints.
pub fn catalogue() -> Result<&'static Vec<(FiniteGroupId, GroupFingerprint)>> {
    static CACHE: OnceLock<Vec<(FiniteGroupId, GroupFingerprint)>> = OnceLock::new();
    if let Some(c) = CACHE.get() {
        return Ok(c);
    }
    let c = build_catalogue()?;
    Ok(CACHE.get_or_init(|| c))
}

const GOLDEN_CATALOGUE: &str = include_str!("../fixtures/group_catalogue_v1.txt");

/// Golden fingerprint data (frozen; the catalogue test regenerates and
/// compares).
pub fn golden_catalogue() -> Result<&'static Vec<(FiniteGroupId, GroupFingerprint)>> {
    static CACHE: OnceLock<Vec<(FiniteGroupId, GroupFingerprint)>> = OnceLock::new();
    if let Some(c) = CACHE.get() {
        return Ok(c);
    }
    let mut out = Vec::new();
    for line in GOLDEN_CATALOGUE.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (tag, rest) = line
            .split_once('|')
            .ok_or_else(|| invalid("bad golden line"))?;
        out.push((
            FiniteGroupId::from_tag(tag)?,
            GroupFingerprint::from_line(rest)?,
        ));
    }
    if out.is_empty() {
        return Err(invalid("golden group catalogue is empty"));
    }
    Ok(CACHE.get_or_init(|| out))
}

/// Render a catalogue in the golden fixture format.
pub fn render_catalogue(entries: &[(FiniteGroupId, GroupFingerprint)]) -> String {
    let mut s = String::from("# group fingerprint catalogue v1\n");
    for (id, fp) in entries {
        s.push_str(&format!("{}|{}\n", id.tag(), fp.to_line()));
    }
    s
}

/// Identify a fingerprint against the golden catalogue.
pub fn identify(fp: &GroupFingerprint) -> Result<FiniteGroupId> {
    for (id, gfp) in golden_catalogue()? {
        if gfp == fp {
            return Ok(id.clone());
        }
    }
    Ok(FiniteGroupId::Unknown(fp.clone()))
}

/// Fingerprint and identify a multiplicatively closed set of
/// quaternion elements (e.g. torsion units of an order).
pub fn identify_quaternion_group(
    alg: &QuaternionAlgebra,
    elems: &[QuaternionElement],
) -> Result<FiniteGroupId> {
    if elems.is_empty() {
        return Err(invalid("empty element set"));
    }
    let mul = |a: &QuaternionElement, b: &QuaternionElement| alg.mul(a, b);
    let fp = fingerprint_elements(elems, elems, &mul)?;
    identify(&fp)
}
