use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::perm::Perm;
use super::Group;
use crate::error::{Error, Result};

/// Largest group order accepted by the builders (`|S_7|`).
pub const MAX_ORDER: usize = 5040;

/// Associativity is checked on all triples up to this order and on a fixed
/// pseudo-random sample of triples above it.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;
const SAMPLED_TRIPLES: usize = 20_000;

/// JSON description of a finite group, e.g. `{"type":"symmetric","n":3}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupSpec {
    Trivial,
    Cyclic {
        n: usize,
    },
    /// The symmetry group of the `n`-gon, of order `2n`.
    Dihedral {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    Alternating {
        n: usize,
    },
    Quaternion,
    DirectProduct {
        factors: Vec<GroupSpec>,
    },
    /// Subgroup of `S_degree` generated by permutations in cycle notation.
    Permutation {
        generators: Vec<String>,
        #[serde(default)]
        degree: Option<usize>,
    },
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
}

/// A validated finite group. Elements are ids `0..order`, the identity is `0`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    labels: Vec<String>,
    perms: Option<Vec<Perm>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a Cayley table. The identity is renumbered to `0` if needed.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        let bad = |m: String| Error::InvalidGroupTable(m);
        if n == 0 || n > MAX_ORDER {
            return Err(bad(format!("order {n} outside 1..={MAX_ORDER}")));
        }
        let mut labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect());
        if labels.len() != n {
            return Err(bad(format!("{} labels for {n} elements", labels.len())));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(bad("table must be square with entries < order".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| bad("no identity element".into()))?;
        let mut flat: Vec<u16> = table.iter().flatten().map(|&x| x as u16).collect();
        if identity != 0 {
            let swap = |x: u16| match x as usize {
                x if x == identity => 0,
                0 => identity as u16,
                x => x as u16,
            };
            let old = flat.clone();
            for a in 0..n {
                for b in 0..n {
                    flat[swap(a as u16) as usize * n + swap(b as u16) as usize] = swap(old[a * n + b]);
                }
            }
            labels.swap(0, identity);
        }
        Self::validated(format!("table group of order {n}"), n, flat, labels, None)
    }

    fn validated(
        name: String,
        order: usize,
        table: Vec<u16>,
        labels: Vec<String>,
        perms: Option<Vec<Perm>>,
    ) -> Result<Self> {
        let n = order;
        let bad = |m: String| Error::InvalidGroupTable(m);
        let mut seen = vec![false; n];
        for a in 0..n {
            for flag in seen.iter_mut() {
                *flag = false;
            }
            for b in 0..n {
                let x = table[a * n + b] as usize;
                if seen[x] {
                    return Err(bad(format!("row {a} repeats element {x}")));
                }
                seen[x] = true;
            }
            for flag in seen.iter_mut() {
                *flag = false;
            }
            for b in 0..n {
                let x = table[b * n + a] as usize;
                if seen[x] {
                    return Err(bad(format!("column {a} repeats element {x}")));
                }
                seen[x] = true;
            }
        }
        let mut inverse = vec![0u16; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] == 0).unwrap() as u16;
        }
        let g = FiniteGroup {
            name,
            order,
            table,
            inverse,
            labels,
            perms,
        };
        if let Some((a, b, c)) = g.associativity_violation() {
            return Err(bad(format!("(ab)c != a(bc) for ({a}, {b}, {c})")));
        }
        Ok(g)
    }

    fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        let check = |a, b, c| self.op(self.op(a, b), c) == self.op(a, self.op(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Some((a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(a, b, c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    /// Closure of the generators in `S_degree`. Elements are numbered in
    /// lexicographic order of their image arrays, so the identity is `0`.
    pub fn from_permutations(name: String, degree: usize, generators: &[Perm]) -> Result<Self> {
        let id = Perm::identity(degree);
        let gens: Vec<Perm> = generators.iter().map(|g| g.padded(degree)).collect();
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_ORDER {
                        return Err(Error::GroupTooLarge(MAX_ORDER));
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut elems: Vec<Perm> = seen.into_iter().collect();
        elems.sort();
        let index: HashMap<&Perm, u16> = elems.iter().enumerate().map(|(i, p)| (p, i as u16)).collect();
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&a.then(b)]);
            }
        }
        let labels = elems.iter().map(|p| p.to_string()).collect();
        Self::validated(name, n, table, labels, Some(elems))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Product of ids.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inverse_of(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn permutations(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    /// Cayley table as nested rows, for serialization.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.op(a, b)).collect())
            .collect()
    }

    fn direct_product(name: String, a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        if a.order * b.order > MAX_ORDER {
            return Err(Error::GroupTooLarge(MAX_ORDER));
        }
        if let (Some(pa), Some(pb)) = (&a.perms, &b.perms) {
            let da = pa[0].degree();
            let db = pb[0].degree();
            let shift = |p: &Perm| {
                let mut images: Vec<u32> = (0..da as u32).collect();
                images.extend(p.images().iter().map(|&x| x + da as u32));
                Perm::from_images(images)
            };
            let gens: Vec<Perm> = pa
                .iter()
                .map(|p| p.padded(da + db))
                .chain(pb.iter().map(shift))
                .collect();
            return Self::from_permutations(name, da + db, &gens);
        }
        let n = a.order * b.order;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.op(x / b.order, y / b.order) * b.order + b.op(x % b.order, y % b.order))
                    .collect()
            })
            .collect();
        let labels = (0..n)
            .map(|x| format!("({}, {})", a.labels[x / b.order], b.labels[x % b.order]))
            .collect();
        let mut g = Self::from_table(table, Some(labels))?;
        g.name = name;
        Ok(g)
    }
}

fn cycle_perm(degree: usize, points: &[u32]) -> Perm {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &p) in points.iter().enumerate() {
        images[p as usize] = points[(i + 1) % points.len()];
    }
    Perm::from_images(images)
}

fn quaternion_group() -> Result<FiniteGroup> {
    // element 2u + s is (-1)^s * unit[u], units 1, i, j, k
    const UNIT_PRODUCT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let names = ["1", "i", "j", "k"];
    let table = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (u, s) = UNIT_PRODUCT[x / 2][y / 2];
                    2 * u + ((s + x % 2 + y % 2) % 2)
                })
                .collect()
        })
        .collect();
    let labels = (0..8)
        .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2]))
        .collect();
    let mut g = FiniteGroup::from_table(table, Some(labels))?;
    g.name = "Q_8".into();
    Ok(g)
}

/// Builds and validates a finite group from its JSON spec.
pub fn build_finite_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    let invalid = |m: &str| Error::InvalidGroupSpec(m.to_string());
    match spec {
        GroupSpec::Trivial => FiniteGroup::from_permutations("C_1".into(), 1, &[]),
        GroupSpec::Cyclic { n } => {
            if *n == 0 || *n > MAX_ORDER {
                return Err(invalid("cyclic order must be in 1..=5040"));
            }
            let pts: Vec<u32> = (0..*n as u32).collect();
            FiniteGroup::from_permutations(format!("C_{n}"), *n, &[cycle_perm(*n, &pts)])
        }
        GroupSpec::Dihedral { n } => {
            let name = format!("D_{n}");
            match *n {
                0 => Err(invalid("dihedral n must be >= 1")),
                n if 2 * n > MAX_ORDER => Err(Error::GroupTooLarge(MAX_ORDER)),
                1 => FiniteGroup::from_permutations(name, 2, &[cycle_perm(2, &[0, 1])]),
                2 => FiniteGroup::from_permutations(name, 4, &[cycle_perm(4, &[0, 1]), cycle_perm(4, &[2, 3])]),
                n => {
                    let rotation: Vec<u32> = (0..n as u32).collect();
                    let reflection = Perm::from_images((0..n as u32).map(|x| (n as u32 - x) % n as u32).collect());
                    FiniteGroup::from_permutations(name, n, &[cycle_perm(n, &rotation), reflection])
                }
            }
        }
        GroupSpec::Symmetric { n } => {
            if *n == 0 || *n > 7 {
                return Err(invalid("symmetric degree must be in 1..=7"));
            }
            let gens = if *n == 1 {
                vec![]
            } else {
                let all: Vec<u32> = (0..*n as u32).collect();
                vec![cycle_perm(*n, &[0, 1]), cycle_perm(*n, &all)]
            };
            FiniteGroup::from_permutations(format!("S_{n}"), *n, &gens)
        }
        GroupSpec::Alternating { n } => {
            if *n == 0 || *n > 7 {
                return Err(invalid("alternating degree must be in 1..=7"));
            }
            let gens: Vec<Perm> = (2..*n as u32).map(|k| cycle_perm(*n, &[0, 1, k])).collect();
            FiniteGroup::from_permutations(format!("A_{n}"), *n, &gens)
        }
        GroupSpec::Quaternion => quaternion_group(),
        GroupSpec::DirectProduct { factors } => {
            let mut it = factors.iter();
            let first = it.next().ok_or_else(|| invalid("direct product of no factors"))?;
            let mut g = build_finite_group(first)?;
            for f in it {
                let h = build_finite_group(f)?;
                let name = format!("{} x {}", g.name, h.name);
                g = FiniteGroup::direct_product(name, &g, &h)?;
            }
            Ok(g)
        }
        GroupSpec::Permutation { generators, degree } => {
            let max_point = generators
                .iter()
                .flat_map(|s| s.split(|c: char| !c.is_ascii_digit()))
                .filter_map(|t| t.parse::<usize>().ok())
                .max()
                .unwrap_or(1);
            let degree = degree.unwrap_or(max_point);
            if degree < max_point {
                return Err(invalid("generator moves a point beyond the stated degree"));
            }
            let gens = generators
                .iter()
                .map(|s| Perm::parse_cycles(s, degree))
                .collect::<Result<Vec<_>>>()?;
            let names: Vec<&str> = generators.iter().map(String::as_str).collect();
            FiniteGroup::from_permutations(format!("<{}>", names.join(", ")), degree, &gens)
        }
        GroupSpec::Table { table, labels } => FiniteGroup::from_table(table.clone(), labels.clone()),
    }
}

impl Group for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.op(*a, *b)
    }

    fn inv(&self, a: &usize) -> usize {
        self.inverse_of(*a)
    }

    fn contains(&self, a: &usize) -> bool {
        *a < self.order
    }

    fn label(&self, a: &usize) -> String {
        self.labels[*a].clone()
    }

    /// Cycle notation for permutation groups, otherwise the element label.
    fn parse_element(&self, s: &str) -> Result<usize> {
        let squash = |t: &str| t.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        if let Some(perms) = &self.perms {
            if let Ok(p) = Perm::parse_cycles(s, perms[0].degree()) {
                if let Ok(i) = perms.binary_search(&p) {
                    return Ok(i);
                }
                return Err(Error::UnknownElement(s.to_string()));
            }
        }
        let key = squash(s);
        self.labels
            .iter()
            .position(|l| squash(l) == key)
            .ok_or_else(|| Error::UnknownElement(s.to_string()))
    }
}

/// Conjugacy classes, each sorted, ordered by their smallest element.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|c| g.conjugate(&a, &c)).collect();
        class.sort_unstable();
        class.dedup();
        for &x in &class {
            class_of[x] = classes.len();
        }
        classes.push(class);
    }
    classes
}

/// `{ z : zg = gz for all g }`, sorted.
pub fn group_center(g: &FiniteGroup) -> Vec<usize> {
    g.elements()
        .filter(|&z| g.elements().all(|x| g.op(z, x) == g.op(x, z)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(spec: &str) -> FiniteGroup {
        build_finite_group(&serde_json::from_str(spec).unwrap()).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(group(r#"{"type":"symmetric","n":3}"#).order(), 6);
        let c4 = group(r#"{"type":"cyclic","n":4}"#);
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
        assert_eq!(group(r#"{"type":"dihedral","n":4}"#).order(), 8);
        assert_eq!(group(r#"{"type":"alternating","n":4}"#).order(), 12);
        assert_eq!(group(r#"{"type":"trivial"}"#).order(), 1);
        assert_eq!(group(r#"{"type":"symmetric","n":5}"#).order(), 120);
    }

    #[test]
    fn klein_four() {
        let v = group(r#"{"type":"direct_product","factors":[{"type":"cyclic","n":2},{"type":"cyclic","n":2}]}"#);
        assert_eq!(v.order(), 4);
        assert!(v.elements().all(|a| v.op(a, a) == 0));
        assert_eq!(v.exponent(), 2);
    }

    #[test]
    fn quaternion() {
        let q = group(r#"{"type":"quaternion"}"#);
        assert_eq!(q.order(), 8);
        assert!(!q.is_abelian());
        let i = q.parse_element("i").unwrap();
        let j = q.parse_element("j").unwrap();
        let k = q.parse_element("k").unwrap();
        let m1 = q.parse_element("-1").unwrap();
        assert_eq!(q.op(i, j), k);
        assert_eq!(q.op(i, i), m1);
        assert_eq!(group_center(&q), vec![0, m1]);
    }

    #[test]
    fn s3_class_sizes() {
        let s3 = group(r#"{"type":"symmetric","n":3}"#);
        let sizes: Vec<usize> = conjugacy_classes(&s3).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(group_center(&s3), vec![0]);
    }

    #[test]
    fn d4_classes_and_center() {
        let d4 = group(r#"{"type":"dihedral","n":4}"#);
        assert_eq!(conjugacy_classes(&d4).len(), 5);
        assert_eq!(group_center(&d4).len(), 2);
    }

    #[test]
    fn table_with_identity_elsewhere() {
        // Z/3 with elements labelled so that the identity is entry 2
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table(t, Some(vec!["a".into(), "b".into(), "e".into()])).unwrap();
        assert_eq!(g.labels()[0], "e");
        assert_eq!(g.op(1, 2), 0);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).is_err());
        // a Latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(loop5, None),
            Err(Error::InvalidGroupTable(_))
        ));
    }

    #[test]
    fn parse_cycle_labels() {
        let s3 = group(r#"{"type":"symmetric","n":3}"#);
        let t = s3.parse_element("(1 2)").unwrap();
        assert_eq!(s3.label(&t), "(1 2)");
        assert_eq!(s3.parse_element("()").unwrap(), 0);
        assert!(s3.parse_element("(1 4)").is_err());
    }

    #[test]
    fn permutation_generators_close() {
        let g = group(r#"{"type":"permutation","generators":["(1 2 3 4)","(1 3)"]}"#);
        assert_eq!(g.order(), 8);
        assert!(matches!(
            build_finite_group(&GroupSpec::Symmetric { n: 8 }),
            Err(Error::InvalidGroupSpec(_))
        ));
    }
}
