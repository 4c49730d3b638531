//! Finite groups by closure from generators: multiplication tables,
//! conjugacy classes, centralizers, diagonal k-tuple classes (the finite
//! model of the k-sectors), and twisting subgroups.
//!
//! # Conventions
//!
//! - Elements are indexed `0..order` with index 0 the identity.
//! - Element order is breadth-first word order from the generators with
//!   lexicographic tie-break, so indices, class labels, and CLI output are
//!   reproducible across runs and platforms.
//! - `mul(a, b)` composes left-to-right in the action sense: for
//!   permutations `(a*b)(x) = a(b(x))`, matching `rho(a*b) = rho(a)rho(b)`
//!   for matrix representations.
//! - Every constructed table is validated: identity, two-sided inverses,
//!   Latin property, and associativity (all triples up to order 200, then
//!   10^4 seeded random triples). Validation failures are errors, never
//!   warnings; every downstream formula assumes the group axioms.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default cap on closure size.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;
/// Default cap on |G|^k for tuple-class enumeration.
pub const DEFAULT_TUPLE_CAP: usize = 1_000_000;

const ASSOC_EXHAUSTIVE_LIMIT: usize = 200;
const ASSOC_SAMPLES: usize = 10_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("closure exceeded the cap of {cap} elements")]
    NotClosedWithinBound { cap: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("matrix generator did not reach the identity within {cap} powers")]
    InfiniteOrder { cap: usize },
    #[error("requested enumeration of {needed} items exceeds the cap of {cap}")]
    CapExceeded { needed: u128, cap: usize },
}

/// A permutation on `0..degree`, stored as the image vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Permutation, GroupError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if (i as usize) >= images.len() || seen[i as usize] {
                return Err(GroupError::NotAGroup("invalid permutation images".into()));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from a list of cycles of 0-based points. Cycles need not be
    /// disjoint; they compose left to right (each point passes through the
    /// first cycle, then the second, and so on). Points must be distinct
    /// within one cycle.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Permutation, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            let mut seen = vec![false; degree];
            for p in cycle {
                if *p as usize >= degree {
                    return Err(GroupError::NotAGroup(format!(
                        "cycle point {} out of range for degree {degree}",
                        p + 1
                    )));
                }
                if seen[*p as usize] {
                    return Err(GroupError::NotAGroup(format!(
                        "cycle repeats point {}",
                        p + 1
                    )));
                }
                seen[*p as usize] = true;
            }
            let mut step: Vec<u32> = (0..degree as u32).collect();
            for w in 0..cycle.len() {
                step[cycle[w] as usize] = cycle[(w + 1) % cycle.len()];
            }
            for image in images.iter_mut() {
                *image = step[*image as usize];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    /// `(self o other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Disjoint cycle decomposition, fixed points omitted, cycles ordered by
    /// least moved point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] || self.images[start as usize] == start {
                seen[start as usize] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut p = self.images[start as usize];
            while p != start {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.images[p as usize];
            }
            out.push(cycle);
        }
        out
    }
}

/// How the group was constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    PermutationImages { degree: usize },
    ExplicitTable,
    MatrixClosure { dim: usize },
}

/// One conjugacy class.
#[derive(Clone, Debug)]
pub struct ConjClass {
    /// Minimal member index.
    pub representative: u32,
    /// Sorted member indices.
    pub members: Vec<u32>,
    pub centralizer_order: usize,
}

/// One simultaneous-conjugation orbit of k-tuples.
#[derive(Clone, Debug)]
pub struct TupleClass {
    pub arity: usize,
    /// Lexicographically minimal member.
    pub representative: Vec<u32>,
    /// All members, sorted lexicographically.
    pub members: Vec<Vec<u32>>,
    /// Elements commuting with every entry of the representative.
    pub centralizer: Vec<u32>,
}

/// A subgroup of a parent group, by element set.
#[derive(Clone, Debug)]
pub struct SubgroupRef {
    /// Sorted element indices; closed, contains 0, closed under inverse.
    pub elements: Vec<u32>,
    /// The generating tuple it was built from.
    pub generators: Vec<u32>,
}

impl SubgroupRef {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

struct ClassData {
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
}

pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<u32>,
    words: Vec<Option<(u32, u32)>>,
    element_orders: Vec<u64>,
    exponent: u64,
    provenance: Provenance,
    perm_images: Option<Vec<Permutation>>,
    classes: OnceLock<ClassData>,
}

pub(crate) struct RawClosure<E> {
    pub elements: Vec<E>,
    pub table: Vec<u32>,
    pub words: Vec<Option<(u32, u32)>>,
    pub gen_elem: Vec<u32>,
}

/// Breadth-first closure from generators, then the full multiplication
/// table. Only `order * generators` concrete products are computed; the
/// rest of the table is filled along the word structure.
pub(crate) fn close_and_tabulate<E, K, M, F>(
    identity: E,
    gens: &[E],
    mul: M,
    key: F,
    cap: usize,
) -> Result<RawClosure<E>, GroupError>
where
    E: Clone,
    K: Eq + Hash,
    M: Fn(&E, &E) -> E,
    F: Fn(&E) -> K,
{
    let mut elements = vec![identity];
    let mut index: HashMap<K, u32> = HashMap::new();
    index.insert(key(&elements[0]), 0);
    let mut words: Vec<Option<(u32, u32)>> = vec![None];
    let mut cursor = 0usize;
    while cursor < elements.len() {
        for (s, g) in gens.iter().enumerate() {
            let product = mul(&elements[cursor], g);
            let k = key(&product);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                if elements.len() >= cap {
                    return Err(GroupError::NotClosedWithinBound { cap });
                }
                e.insert(elements.len() as u32);
                words.push(Some((cursor as u32, s as u32)));
                elements.push(product);
            }
        }
        cursor += 1;
    }

    let n = elements.len();
    let gen_elem: Vec<u32> = gens
        .iter()
        .map(|g| *index.get(&key(g)).expect("generator must appear in closure"))
        .collect();

    let mut table = vec![u32::MAX; n * n];
    // Identity column and generator columns by direct products.
    for a in 0..n {
        table[a * n] = a as u32;
    }
    for (s, g) in gens.iter().enumerate() {
        let col = gen_elem[s] as usize;
        for a in 0..n {
            let product = mul(&elements[a], g);
            let idx = *index.get(&key(&product)).ok_or_else(|| {
                GroupError::NotAGroup("closure is not closed under multiplication".into())
            })?;
            table[a * n + col] = idx;
        }
    }
    // Remaining columns along BFS words: a * (p * g_s) = (a * p) * g_s.
    for y in 1..n {
        if table[y] != u32::MAX {
            continue; // generator column, already filled
        }
        let (p, s) = words[y].expect("non-identity element has a word");
        let gcol = gen_elem[s as usize] as usize;
        for a in 0..n {
            let ap = table[a * n + p as usize] as usize;
            table[a * n + y] = table[ap * n + gcol];
        }
    }
    Ok(RawClosure { elements, table, words, gen_elem })
}

fn validate_table(table: &[u32], n: usize) -> Result<(), GroupError> {
    let at = |a: usize, b: usize| table[a * n + b] as usize;
    for a in 0..n {
        if at(a, 0) != a || at(0, a) != a {
            return Err(GroupError::NotAGroup("index 0 is not a two-sided identity".into()));
        }
    }
    // Latin property: each row and column is a permutation.
    let mut seen = vec![false; n];
    for a in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for b in 0..n {
            let v = at(a, b);
            if v >= n || seen[v] {
                return Err(GroupError::NotAGroup(format!("row {a} is not a permutation")));
            }
            seen[v] = true;
        }
        seen.iter_mut().for_each(|s| *s = false);
        for b in 0..n {
            let v = at(b, a);
            if seen[v] {
                return Err(GroupError::NotAGroup(format!("column {a} is not a permutation")));
            }
            seen[v] = true;
        }
    }
    // Two-sided inverses.
    for a in 0..n {
        let right = (0..n).find(|&b| at(a, b) == 0);
        match right {
            Some(b) if at(b, a) == 0 => {}
            _ => {
                return Err(GroupError::NotAGroup(format!("element {a} has no two-sided inverse")))
            }
        }
    }
    // Associativity: exhaustive at small orders, seeded sampling above.
    let check = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
    if n <= ASSOC_EXHAUSTIVE_LIMIT {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !check(a, b, c) {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails on triple ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6772_6f75_7061_7373);
        for _ in 0..ASSOC_SAMPLES {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let c = rng.gen_range(0..n);
            if !check(a, b, c) {
                return Err(GroupError::NotAGroup(format!(
                    "associativity fails on triple ({a}, {b}, {c})"
                )));
            }
        }
    }
    Ok(())
}

impl FiniteGroup {
    fn from_validated_parts(
        table: Vec<u32>,
        words: Vec<Option<(u32, u32)>>,
        generators: Vec<u32>,
        provenance: Provenance,
        perm_images: Option<Vec<Permutation>>,
    ) -> Result<Arc<FiniteGroup>, GroupError> {
        let n = words.len();
        assert_eq!(table.len(), n * n);
        validate_table(&table, n)?;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            inverse[a] = (0..n as u32).find(|&b| table[a * n + b as usize] == 0).unwrap();
        }
        let mut element_orders = vec![0u64; n];
        for a in 0..n {
            let mut x = a as u32;
            let mut k = 1u64;
            while x != 0 {
                x = table[x as usize * n + a];
                k += 1;
            }
            element_orders[a] = if a == 0 { 1 } else { k };
        }
        let exponent = element_orders.iter().fold(1u64, |acc, &o| acc.lcm(&o));
        Ok(Arc::new(FiniteGroup {
            order: n,
            table,
            inverse,
            generators,
            words,
            element_orders,
            exponent,
            provenance,
            perm_images,
            classes: OnceLock::new(),
        }))
    }

    /// Closure of a list of permutations sharing a degree.
    pub fn from_permutations(
        gens: Vec<Permutation>,
        cap: usize,
    ) -> Result<Arc<FiniteGroup>, GroupError> {
        let degree = gens.first().map(|p| p.degree()).unwrap_or(1);
        if gens.iter().any(|p| p.degree() != degree) {
            return Err(GroupError::NotAGroup("permutation degrees differ".into()));
        }
        let raw = close_and_tabulate(
            Permutation::identity(degree),
            &gens,
            |a, b| a.compose(b),
            |p| p.images().to_vec(),
            cap,
        )?;
        let RawClosure { elements, table, words, gen_elem } = raw;
        FiniteGroup::from_validated_parts(
            table,
            words,
            gen_elem,
            Provenance::PermutationImages { degree },
            Some(elements),
        )
    }

    /// An explicit multiplication table, identity at index 0. With
    /// `generators = None` every non-identity element is taken as a
    /// generator, preserving the input indexing; with explicit generators
    /// the elements are re-indexed into breadth-first word order (a no-op
    /// when the table is already in that order).
    pub fn from_table(
        table_rows: Vec<Vec<u32>>,
        generators: Option<Vec<u32>>,
    ) -> Result<Arc<FiniteGroup>, GroupError> {
        let n = table_rows.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if table_rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::NotAGroup("table is not square".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table_rows {
            for &v in row {
                if v as usize >= n {
                    return Err(GroupError::NotAGroup("table entry out of range".into()));
                }
                flat.push(v);
            }
        }
        validate_table(&flat, n)?;
        match generators {
            None => {
                let words = (0..n)
                    .map(|i| if i == 0 { None } else { Some((0u32, i as u32 - 1)) })
                    .collect();
                let gens = (1..n as u32).collect();
                FiniteGroup::from_validated_parts(flat, words, gens, Provenance::ExplicitTable, None)
            }
            Some(gen_indices) => {
                for &g in &gen_indices {
                    if g as usize >= n {
                        return Err(GroupError::NotAGroup("generator index out of range".into()));
                    }
                }
                let raw = close_and_tabulate(
                    0u32,
                    &gen_indices,
                    |a, b| flat[*a as usize * n + *b as usize],
                    |e| *e,
                    n,
                )?;
                if raw.elements.len() != n {
                    return Err(GroupError::NotAGroup(format!(
                        "generators span only {} of {} table elements",
                        raw.elements.len(),
                        n
                    )));
                }
                FiniteGroup::from_validated_parts(
                    raw.table,
                    raw.words,
                    raw.gen_elem,
                    Provenance::ExplicitTable,
                    None,
                )
            }
        }
    }

    pub(crate) fn from_closure_parts(
        table: Vec<u32>,
        words: Vec<Option<(u32, u32)>>,
        generators: Vec<u32>,
        provenance: Provenance,
    ) -> Result<Arc<FiniteGroup>, GroupError> {
        FiniteGroup::from_validated_parts(table, words, generators, provenance, None)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = 0u32;
        let mut cur = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, cur);
            }
            cur = self.mul(cur, cur);
            e >>= 1;
        }
        acc
    }

    pub fn order_of(&self, a: u32) -> u64 {
        self.element_orders[a as usize]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// All element permutations, present for permutation provenance.
    pub fn perm_images(&self) -> Option<&[Permutation]> {
        self.perm_images.as_deref()
    }

    /// The breadth-first derivation of an element: `(parent, s)` with
    /// `idx = parent * generators[s]`, or `None` for the identity.
    pub fn derivation(&self, idx: u32) -> Option<(u32, u32)> {
        self.words[idx as usize]
    }

    /// The generator-word spelling of an element: a sequence of generator
    /// positions, empty for the identity.
    pub fn word_of(&self, idx: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut cur = idx;
        while let Some((parent, s)) = self.words[cur as usize] {
            out.push(s);
            cur = parent;
        }
        out.reverse();
        out
    }

    pub fn is_abelian(&self) -> bool {
        for &a in &self.generators {
            for &b in &self.generators {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| {
            let n = self.order;
            let mut class_of = vec![u32::MAX; n];
            let mut classes = Vec::new();
            for g in 0..n as u32 {
                if class_of[g as usize] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                let mut members = Vec::new();
                for x in 0..n as u32 {
                    let y = self.mul(self.mul(x, g), self.inv(x));
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = id;
                        members.push(y);
                    }
                }
                members.sort_unstable();
                let centralizer_order = n / members.len();
                classes.push(ConjClass { representative: members[0], members, centralizer_order });
            }
            debug_assert_eq!(
                classes.iter().map(|c| c.members.len()).sum::<usize>(),
                n,
                "classes partition the group"
            );
            ClassData { classes, class_of }
        })
    }

    /// Conjugacy classes, sorted by minimal member; identity class first.
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    pub fn class_of(&self, g: u32) -> u32 {
        self.class_data().class_of[g as usize]
    }

    /// Diagonal conjugacy classes of k-tuples, with centralizers.
    pub fn tuple_classes(&self, k: usize, cap: usize) -> Result<Vec<TupleClass>, GroupError> {
        assert!(k >= 1, "tuple arity must be positive");
        let n = self.order;
        let total = u32::try_from(k)
            .ok()
            .and_then(|k| (n as u128).checked_pow(k))
            .ok_or(GroupError::CapExceeded { needed: u128::MAX, cap })?;
        if total > cap as u128 {
            return Err(GroupError::CapExceeded { needed: total, cap });
        }
        let total = total as usize;
        let flat = |t: &[u32]| -> usize {
            t.iter().fold(0usize, |acc, &x| acc * n + x as usize)
        };
        let mut assigned: Vec<i32> = vec![-1; total];
        let mut classes = Vec::new();
        let mut tuple = vec![0u32; k];
        for code in 0..total {
            if assigned[code] != -1 {
                continue;
            }
            // Decode lexicographic index.
            let mut c = code;
            for i in (0..k).rev() {
                tuple[i] = (c % n) as u32;
                c /= n;
            }
            let id = classes.len() as i32;
            let mut members = Vec::new();
            let mut centralizer = Vec::new();
            let mut image = vec![0u32; k];
            for x in 0..n as u32 {
                let xi = self.inv(x);
                for (i, &t) in tuple.iter().enumerate() {
                    image[i] = self.mul(self.mul(x, t), xi);
                }
                if image == tuple {
                    centralizer.push(x);
                }
                let icode = flat(&image);
                if assigned[icode] == -1 {
                    assigned[icode] = id;
                    members.push(image.clone());
                }
            }
            members.sort_unstable();
            debug_assert_eq!(members.len() * centralizer.len(), n);
            classes.push(TupleClass {
                arity: k,
                representative: tuple.clone(),
                members,
                centralizer,
            });
        }
        Ok(classes)
    }

    /// Least subgroup containing the given elements.
    pub fn subgroup_generated(&self, tuple: &[u32]) -> SubgroupRef {
        let n = self.order;
        let mut in_sub = vec![false; n];
        in_sub[0] = true;
        let mut frontier = vec![0u32];
        let mut cursor = 0;
        while cursor < frontier.len() {
            let x = frontier[cursor];
            cursor += 1;
            for &g in tuple {
                let y = self.mul(x, g);
                if !in_sub[y as usize] {
                    in_sub[y as usize] = true;
                    frontier.push(y);
                }
            }
        }
        frontier.sort_unstable();
        SubgroupRef { elements: frontier, generators: tuple.to_vec() }
    }

    /// The subgroup as a standalone group in its own breadth-first order,
    /// together with the local-to-parent index map.
    pub fn subgroup_as_group(
        &self,
        sub: &SubgroupRef,
    ) -> Result<(Arc<FiniteGroup>, Vec<u32>), GroupError> {
        let raw = close_and_tabulate(
            0u32,
            &sub.generators,
            |a, b| self.mul(*a, *b),
            |e| *e,
            self.order,
        )?;
        debug_assert_eq!(raw.elements.len(), sub.elements.len());
        let to_parent = raw.elements.clone();
        let group = FiniteGroup::from_validated_parts(
            raw.table,
            raw.words,
            raw.gen_elem,
            Provenance::ExplicitTable,
            None,
        )?;
        Ok((group, to_parent))
    }
}

/// The direct product `G x H` on index pairs, componentwise multiplication,
/// in breadth-first order from the inherited generators.
pub struct ProductGroup {
    pub group: Arc<FiniteGroup>,
    pub left: Arc<FiniteGroup>,
    pub right: Arc<FiniteGroup>,
    pairs: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), u32>,
}

impl ProductGroup {
    pub fn pair_of(&self, idx: u32) -> (u32, u32) {
        self.pairs[idx as usize]
    }

    pub fn index_of(&self, left: u32, right: u32) -> u32 {
        self.index[&(left, right)]
    }
}

pub fn direct_product(
    left: &Arc<FiniteGroup>,
    right: &Arc<FiniteGroup>,
    cap: usize,
) -> Result<ProductGroup, GroupError> {
    let needed = left.order() as u128 * right.order() as u128;
    if needed > cap as u128 {
        return Err(GroupError::CapExceeded { needed, cap });
    }
    let mut gens: Vec<(u32, u32)> = Vec::new();
    gens.extend(left.generators().iter().map(|&g| (g, 0u32)));
    gens.extend(right.generators().iter().map(|&h| (0u32, h)));
    let raw = close_and_tabulate(
        (0u32, 0u32),
        &gens,
        |a, b| (left.mul(a.0, b.0), right.mul(a.1, b.1)),
        |e| *e,
        cap,
    )?;
    if raw.elements.len() != left.order() * right.order() {
        return Err(GroupError::NotAGroup(
            "product generators failed to span the direct product".into(),
        ));
    }
    let pairs = raw.elements.clone();
    let index: HashMap<(u32, u32), u32> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let group = FiniteGroup::from_closure_parts(
        raw.table,
        raw.words,
        raw.gen_elem,
        Provenance::ExplicitTable,
    )?;
    Ok(ProductGroup { group, left: left.clone(), right: right.clone(), pairs, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn s3() -> Arc<FiniteGroup> {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        FiniteGroup::from_permutations(vec![a, b], DEFAULT_CLOSURE_CAP).unwrap()
    }

    fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let gen = Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap();
        FiniteGroup::from_permutations(vec![gen], DEFAULT_CLOSURE_CAP).unwrap()
    }

    #[test]
    fn empty_generator_list_gives_trivial_group() {
        let g = FiniteGroup::from_permutations(vec![], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_classes().len(), 1);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn s3_closure_and_classes() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 3);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
        assert_eq!(classes[0].members, vec![0]);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        for c in classes {
            assert_eq!(c.members.len() * c.centralizer_order, 6);
        }
    }

    #[test]
    fn element_orders_and_exponent() {
        let g = cyclic(6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.order_of(1), 6);
        assert_eq!(g.order_of(g.mul(1, 1)), 3);
        // pow matches table iteration, including negative exponents
        assert_eq!(g.pow(1, 5), g.inv(1));
        assert_eq!(g.pow(1, -1), g.inv(1));
        assert_eq!(g.pow(1, 0), 0);
    }

    #[test]
    fn tuple_classes_of_trivial_and_abelian_groups() {
        let t = FiniteGroup::from_permutations(vec![], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(t.tuple_classes(2, DEFAULT_TUPLE_CAP).unwrap().len(), 1);
        let c2 = cyclic(2);
        let tc = c2.tuple_classes(2, DEFAULT_TUPLE_CAP).unwrap();
        assert_eq!(tc.len(), 4);
        assert!(tc.iter().all(|c| c.members.len() == 1 && c.centralizer.len() == 2));
    }

    #[test]
    fn s3_has_eleven_diagonal_pair_classes() {
        let g = s3();
        let tc = g.tuple_classes(2, DEFAULT_TUPLE_CAP).unwrap();
        assert_eq!(tc.len(), 11);
        let total: usize = tc.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, 36);
        for c in &tc {
            assert_eq!(c.members.len() * c.centralizer.len(), 6);
            assert_eq!(&c.members[0], &c.representative);
        }
    }

    #[test]
    fn tuple_cap_is_enforced() {
        let g = s3();
        match g.tuple_classes(9, 1_000_000) {
            Err(GroupError::CapExceeded { .. }) => {}
            other => panic!("expected CapExceeded, got {:?}", other.map(|v| v.len())),
        }
    }

    #[test]
    fn evaluation_map_respects_tuple_classes() {
        // For every arity-2 tuple class, the pairwise product lands in a
        // single conjugacy class.
        let g = s3();
        for tc in g.tuple_classes(2, DEFAULT_TUPLE_CAP).unwrap() {
            let target = g.class_of(g.mul(tc.representative[0], tc.representative[1]));
            for m in &tc.members {
                assert_eq!(g.class_of(g.mul(m[0], m[1])), target);
            }
        }
    }

    #[test]
    fn subgroup_generated_examples() {
        let g = s3();
        let trivial = g.subgroup_generated(&[]);
        assert_eq!(trivial.elements, vec![0]);
        let whole = g.subgroup_generated(&[1, 2]);
        assert_eq!(whole.order(), 6);
        let c6 = cyclic(6);
        let sq = c6.mul(1, 1);
        let sub = c6.subgroup_generated(&[sq]);
        assert_eq!(sub.order(), 3);
        let (local, to_parent) = c6.subgroup_as_group(&sub).unwrap();
        assert_eq!(local.order(), 3);
        assert_eq!(to_parent[0], 0);
    }

    #[test]
    fn twisting_subgroups_of_tuple_class_members_are_conjugate() {
        let g = s3();
        for tc in g.tuple_classes(2, DEFAULT_TUPLE_CAP).unwrap() {
            let rep_sub = g.subgroup_generated(&tc.representative);
            for m in &tc.members {
                let sub = g.subgroup_generated(m);
                assert_eq!(sub.order(), rep_sub.order());
            }
        }
    }

    #[test]
    fn direct_product_with_trivial_is_isomorphic() {
        let g = s3();
        let t = FiniteGroup::from_permutations(vec![], DEFAULT_CLOSURE_CAP).unwrap();
        let p = direct_product(&g, &t, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(p.group.order(), 6);
        for a in 0..6u32 {
            for b in 0..6u32 {
                assert_eq!(p.group.mul(a, b), g.mul(a, b));
            }
        }
    }

    #[test]
    fn klein_four_product() {
        let c2 = cyclic(2);
        let p = direct_product(&c2, &c2, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(p.group.order(), 4);
        assert_eq!(p.group.conjugacy_classes().len(), 4);
        assert_eq!(p.group.exponent(), 2);
    }

    #[test]
    fn table_input_roundtrips_and_validates() {
        let g = s3();
        let n = g.order();
        let rows: Vec<Vec<u32>> =
            (0..n).map(|a| (0..n).map(|b| g.mul(a as u32, b as u32)).collect()).collect();
        let rebuilt = FiniteGroup::from_table(rows.clone(), None).unwrap();
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                assert_eq!(rebuilt.mul(a, b), g.mul(a, b));
            }
        }
        // Re-parsing with the original generators preserves the indexing.
        let with_gens = FiniteGroup::from_table(rows, Some(vec![1, 2])).unwrap();
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                assert_eq!(with_gens.mul(a, b), g.mul(a, b));
            }
        }
        // A corrupted table is rejected.
        let mut bad: Vec<Vec<u32>> =
            (0..n).map(|a| (0..n).map(|b| g.mul(a as u32, b as u32)).collect()).collect();
        bad[2][3] = bad[2][4];
        assert!(FiniteGroup::from_table(bad, None).is_err());
    }

    #[test]
    fn overlapping_cycles_compose_left_to_right() {
        // (1 2) then (2 3): 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2.
        let p = Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(p.images(), &[2, 0, 1]);
        // A repeated point inside one cycle is rejected.
        assert!(Permutation::from_cycles(3, &[vec![0, 0, 1]]).is_err());
        assert!(Permutation::from_cycles(2, &[vec![0, 5]]).is_err());
    }

    #[test]
    fn words_spell_elements() {
        let g = s3();
        for idx in 0..g.order() as u32 {
            let word = g.word_of(idx);
            let mut acc = 0u32;
            for s in word {
                acc = g.mul(acc, g.generators()[s as usize]);
            }
            assert_eq!(acc, idx);
        }
    }

    fn arb_permutation(degree: usize) -> impl Strategy<Value = Permutation> {
        proptest::collection::vec(0..degree as u32, degree).prop_map(move |draws| {
            // Fisher-Yates driven by the drawn values.
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for k in (1..degree).rev() {
                images.swap(k, draws[k] as usize % (k + 1));
            }
            Permutation::from_images(images).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn random_closures_satisfy_group_structure(
            gens in proptest::collection::vec(arb_permutation(5), 1..=3)
        ) {
            // Construction already validates the axioms; check the class
            // equation, Lagrange on element orders, and word consistency.
            let g = FiniteGroup::from_permutations(gens, DEFAULT_CLOSURE_CAP).unwrap();
            let n = g.order();
            prop_assert_eq!(120 % n, 0, "subgroup order divides |S5|");
            let class_total: usize =
                g.conjugacy_classes().iter().map(|c| c.members.len()).sum();
            prop_assert_eq!(class_total, n);
            for a in 0..n as u32 {
                prop_assert_eq!(g.exponent() % g.order_of(a), 0);
                prop_assert_eq!(g.inv(g.inv(a)), a);
                prop_assert_eq!(g.pow(a, g.order_of(a) as i64), 0);
            }
        }
    }
}
