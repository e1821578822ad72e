use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::ideal::FracIdeal;
use super::order::{FieldElement, QuadraticOrder};
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::linalg::smith_normal_form;

/// A positive definite binary quadratic form `ax² + bxy + cy²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// All reduced forms of discriminant `disc < 0`, sorted by `(a, b, c)`.
///
/// Reduced means `|b| ≤ a ≤ c`, with `b ≥ 0` whenever `|b| = a` or `a = c`.
pub fn reduced_forms(disc: i64) -> Vec<ReducedForm> {
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -disc {
        for b in (1 - a)..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            out.push(ReducedForm { a, b, c });
        }
        a += 1;
    }
    out.sort();
    out
}

/// Reduces a positive definite form to the unique reduced form it is
/// properly equivalent to.
pub fn reduce_form(a: BigInt, b: BigInt, c: BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut a, mut b, mut c) = (a, b, c);
    loop {
        // Normalize b into (-a, a].
        let two_a: BigInt = &a * 2;
        let r = (&a - &b).div_floor(&two_a);
        if !r.is_zero() {
            let nb = &b + &r * &two_a;
            c = &a * &r * &r + &b * &r + &c;
            b = nb;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if a == c && b.is_negative() {
            b = -b;
        }
        return (a, b, c);
    }
}

/// Class group of a maximal imaginary quadratic order, via reduced forms.
#[derive(Debug)]
pub struct ClassGroup {
    order: QuadraticOrder,
    forms: Vec<ReducedForm>,
    index: HashMap<ReducedForm, usize>,
    representatives: Vec<FracIdeal>,
    table: Vec<Vec<usize>>,
    group: FiniteAbelianGroup,
    coordinates: Vec<GroupElement>,
}

fn cache() -> &'static Mutex<HashMap<i64, Arc<ClassGroup>>> {
    static CACHE: OnceLock<Mutex<HashMap<i64, Arc<ClassGroup>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `aZ + ((−b + √D)/2)Z`.
pub fn ideal_of_form(order: &QuadraticOrder, f: ReducedForm) -> FracIdeal {
    // (−b + √D)/2 = −b/2 + ω₀ if D ≡ 0 (mod 4), (−b − 1)/2 + ω₀ otherwise.
    let x = if order.trace() == 0 { -f.b / 2 } else { (-f.b - 1) / 2 };
    FracIdeal::from_generators(order, &[FieldElement::from_ints(f.a, 0), FieldElement::from_ints(x, 1)])
        .expect("nonzero generators")
}

/// The reduced form attached to the class of `ideal`.
pub fn form_of_ideal(ideal: &FracIdeal) -> ReducedForm {
    let order = ideal.order();
    // d·I is integral with HNF [[a, 0], [b, c]] and c | a, c | b; dividing by
    // c leaves the primitive ideal [A, b' + ω₀].
    let (a, b, c) = ideal.hnf_entries();
    let big_a: BigInt = a / c;
    let b_prime: BigInt = b / c;
    let two = BigInt::from(2);
    let big_b: BigInt = if order.trace() == 0 { -(&b_prime * &two) } else { -(&b_prime * &two) - BigInt::one() };
    let disc = BigInt::from(order.disc());
    let num = &big_b * &big_b - disc;
    let four_a = &big_a * 4;
    debug_assert!(num.is_multiple_of(&four_a));
    let big_c = num / four_a;
    let (ra, rb, rc) = reduce_form(big_a, big_b, big_c);
    ReducedForm {
        a: ra.to_i64().expect("reduced forms are small"),
        b: rb.to_i64().expect("reduced forms are small"),
        c: rc.to_i64().expect("reduced forms are small"),
    }
}

impl ClassGroup {
    /// The class group for `disc`, computed once per discriminant.
    pub fn get(disc: i64) -> Result<Arc<Self>> {
        if let Some(cg) = cache().lock().expect("cache lock").get(&disc) {
            return Ok(cg.clone());
        }
        let order = QuadraticOrder::new(disc)?;
        let cg = Arc::new(Self::compute(order)?);
        Ok(cache().lock().expect("cache lock").entry(disc).or_insert(cg).clone())
    }

    pub fn for_order(order: &QuadraticOrder) -> Arc<Self> {
        Self::get(order.disc()).expect("orders carry valid discriminants")
    }

    fn compute(order: QuadraticOrder) -> Result<Self> {
        let forms = reduced_forms(order.disc());
        let index: HashMap<ReducedForm, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let representatives: Vec<FracIdeal> = forms.iter().map(|f| ideal_of_form(&order, *f)).collect();
        let h = forms.len();
        let mut table = vec![vec![0; h]; h];
        for i in 0..h {
            for j in 0..h {
                let prod = representatives[i].mul(&representatives[j])?;
                table[i][j] = index[&form_of_ideal(&prod)];
            }
        }
        // Z^h modulo e_i + e_j − e_{ij} and e_identity.
        let mut relations = Vec::new();
        for i in 0..h {
            for j in i..h {
                let mut row = vec![BigInt::zero(); h];
                row[i] += 1;
                row[j] += 1;
                row[table[i][j]] -= 1;
                relations.push(row);
            }
        }
        let mut unit = vec![BigInt::zero(); h];
        unit[0] += 1;
        relations.push(unit);
        let snf = smith_normal_form(&relations, h);
        let diag: Vec<u64> = snf.diagonal.iter().map(|d| d.abs().to_u64().expect("finite group")).collect();
        assert!(diag.iter().all(|&d| d > 0) && diag.len() == h, "class group relations have full rank");
        let kept: Vec<usize> = (0..h).filter(|&i| diag[i] > 1).collect();
        let group = FiniteAbelianGroup::new(kept.iter().map(|&i| diag[i]).collect())?;
        let coordinates = (0..h)
            .map(|k| {
                let coords: Vec<i64> = kept
                    .iter()
                    .map(|&i| snf.v[k][i].mod_floor(&BigInt::from(diag[i])).to_i64().expect("small"))
                    .collect();
                group.element(&coords).expect("matching length")
            })
            .collect();
        Ok(Self { order, forms, index, representatives, table, group, coordinates })
    }

    pub fn order(&self) -> &QuadraticOrder {
        &self.order
    }

    pub fn class_number(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[ReducedForm] {
        &self.forms
    }

    pub fn representatives(&self) -> &[FracIdeal] {
        &self.representatives
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Index `i` of the form list composed with index `j`.
    pub fn compose_indices(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    /// The group element of the `index`-th reduced form.
    pub fn element(&self, index: usize) -> Result<GroupElement> {
        self.coordinates
            .get(index)
            .cloned()
            .ok_or(Error::IndexOutOfRange { index, n: self.forms.len() })
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.coordinates.iter().position(|c| c == g)
    }

    pub fn form_index(&self, ideal: &FracIdeal) -> Result<usize> {
        self.order.check_same(ideal.order())?;
        Ok(self.index[&form_of_ideal(ideal)])
    }

    pub fn ideal_class(&self, ideal: &FracIdeal) -> Result<GroupElement> {
        let i = self.form_index(ideal)?;
        Ok(self.coordinates[i].clone())
    }

    /// An ideal in the class `g`.
    pub fn representative_of(&self, g: &GroupElement) -> Option<&FracIdeal> {
        self.index_of(g).map(|i| &self.representatives[i])
    }
}

/// Class of a fractional ideal in its order's class group.
pub fn ideal_class(ideal: &FracIdeal) -> GroupElement {
    ClassGroup::for_order(ideal.order()).ideal_class(ideal).expect("same order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dedekind::ideal::integral_ideals_up_to;

    /// Brute-force count of reduced forms, independent of the enumeration above.
    fn oracle_class_number(disc: i64) -> usize {
        let mut count = 0;
        for a in 1..=-disc {
            for b in -a..=a {
                for c in a..=-disc {
                    if b * b - 4 * a * c != disc {
                        continue;
                    }
                    if (b.abs() == a || a == c) && b < 0 {
                        continue;
                    }
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn class_numbers() {
        for (d, h) in [(-3, 1), (-4, 1), (-20, 2), (-23, 3), (-56, 4), (-84, 4), (-47, 5)] {
            let cg = ClassGroup::get(d).unwrap();
            assert_eq!(cg.class_number(), h, "D={d}");
            assert_eq!(oracle_class_number(d), h, "D={d}");
            assert_eq!(cg.group().order() as usize, h);
        }
        let cg = ClassGroup::get(-20).unwrap();
        assert_eq!(cg.forms(), &[ReducedForm { a: 1, b: 0, c: 5 }, ReducedForm { a: 2, b: 2, c: 3 }]);
        assert_eq!(ClassGroup::get(-84).unwrap().group().invariant_factors(), &[2, 2]);
        assert_eq!(ClassGroup::get(-56).unwrap().group().invariant_factors(), &[4]);
        assert!(ClassGroup::get(-12).is_err());
        assert!(ClassGroup::get(5).is_err());
    }

    #[test]
    fn reduction_examples() {
        let r = |a: i64, b: i64, c: i64| {
            let (x, y, z) = reduce_form(a.into(), b.into(), c.into());
            (x.to_i64().unwrap(), y.to_i64().unwrap(), z.to_i64().unwrap())
        };
        assert_eq!(r(2, -2, 3), (2, 2, 3));
        assert_eq!(r(5, 0, 1), (1, 0, 5));
        assert_eq!(r(3, 2, 2), (2, 2, 3));
        assert_eq!(r(6, 5, 2), r(2, -5, 6));
    }

    #[test]
    fn prime_above_two_is_the_nontrivial_class() {
        let o = QuadraticOrder::new(-20).unwrap();
        let p = FracIdeal::from_generators(&o, &[FieldElement::from_ints(2, 0), FieldElement::from_ints(1, 1)]).unwrap();
        assert_eq!(form_of_ideal(&p), ReducedForm { a: 2, b: 2, c: 3 });
        let cg = ClassGroup::get(-20).unwrap();
        assert_eq!(cg.ideal_class(&p).unwrap(), cg.element(1).unwrap());
        assert_eq!(cg.ideal_class(&FracIdeal::unit(&o)).unwrap(), cg.group().zero());
    }

    #[test]
    fn representatives_round_trip() {
        for d in [-20, -23, -84, -56] {
            let cg = ClassGroup::get(d).unwrap();
            for (i, rep) in cg.representatives().iter().enumerate() {
                assert_eq!(cg.form_index(rep).unwrap(), i);
            }
            assert_eq!(cg.element(0).unwrap(), cg.group().zero());
        }
    }

    #[test]
    fn class_map_is_a_homomorphism() {
        for d in [-20, -23] {
            let o = QuadraticOrder::new(d).unwrap();
            let cg = ClassGroup::get(d).unwrap();
            let ideals = integral_ideals_up_to(&o, 20);
            for i in &ideals {
                for j in &ideals {
                    let lhs = cg.ideal_class(&i.mul(j).unwrap()).unwrap();
                    let rhs = cg.group().add(&cg.ideal_class(i).unwrap(), &cg.ideal_class(j).unwrap());
                    assert_eq!(lhs, rhs);
                }
                assert_eq!(cg.ideal_class(&i.inverse()).unwrap(), cg.group().neg(&cg.ideal_class(i).unwrap()));
            }
        }
    }
}
