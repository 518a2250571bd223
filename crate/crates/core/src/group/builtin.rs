//! Named group families.

use std::fmt;

use num_rational::Rational64;

use super::quaternion::{Biquadratic, Quaternion};
use super::FiniteGroup;
use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::error::{Error, Result};

/// Symmetric groups above this degree exceed the supported order.
const MAX_SYMMETRIC_DEGREE: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupFamily {
    /// `Z_N`, generated by `ξ`.
    Cyclic(usize),
    /// `D_N` of order `2N`, generated by a rotation `r` and a reflection `s`.
    Dihedral(usize),
    /// The quaternion group `Q_8`, generated by `i` and `j`.
    Quaternion,
    /// `S_n`, generated by `(1 2)` and `(1 2 … n)`.
    Symmetric(usize),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
    DirectProduct(Box<GroupFamily>, Box<GroupFamily>),
}

impl GroupFamily {
    /// Parses `name` plus integer parameters, e.g. `("dihedral", [4])`.
    pub fn from_name(name: &str, params: &[usize]) -> Result<Self> {
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::BadParams(format!(
                    "`{name}` takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let fam = match name {
            "cyclic" => {
                want(1)?;
                Self::Cyclic(params[0])
            }
            "dihedral" => {
                want(1)?;
                Self::Dihedral(params[0])
            }
            "symmetric" => {
                want(1)?;
                Self::Symmetric(params[0])
            }
            "quaternion" => {
                want(0)?;
                Self::Quaternion
            }
            "binary_tetrahedral" => {
                want(0)?;
                Self::BinaryTetrahedral
            }
            "binary_octahedral" => {
                want(0)?;
                Self::BinaryOctahedral
            }
            "binary_icosahedral" => {
                want(0)?;
                Self::BinaryIcosahedral
            }
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        Ok(fam)
    }

    /// Parses the compact textual form used on the command line:
    /// `cyclic:6`, `binary_octahedral`, `product(cyclic:2,dihedral:4)`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(inner) = spec
            .strip_prefix("product(")
            .and_then(|s| s.strip_suffix(')'))
        {
            let mut depth = 0usize;
            let split = inner
                .char_indices()
                .find(|&(_, c)| {
                    match c {
                        '(' => depth += 1,
                        ')' => depth = depth.saturating_sub(1),
                        _ => {}
                    }
                    c == ',' && depth == 0
                })
                .map(|(i, _)| i)
                .ok_or_else(|| Error::BadParams(format!("product needs two factors: `{spec}`")))?;
            let left = Self::parse(&inner[..split])?;
            let right = Self::parse(&inner[split + 1..])?;
            return Ok(Self::DirectProduct(Box::new(left), Box::new(right)));
        }
        let (name, params) = match spec.split_once(':') {
            Some((n, p)) => {
                let params = p
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::BadParams(format!("bad integer `{x}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                (n, params)
            }
            None => (spec, Vec::new()),
        };
        Self::from_name(name, &params)
    }

    /// Order of the group without building it.
    pub fn order(&self) -> usize {
        match self {
            Self::Cyclic(n) => *n,
            Self::Dihedral(n) => 2 * n,
            Self::Quaternion => 8,
            Self::Symmetric(n) => (1..=*n).product(),
            Self::BinaryTetrahedral => 24,
            Self::BinaryOctahedral => 48,
            Self::BinaryIcosahedral => 120,
            Self::DirectProduct(a, b) => a.order() * b.order(),
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cyclic(n) => write!(f, "cyclic:{n}"),
            Self::Dihedral(n) => write!(f, "dihedral:{n}"),
            Self::Quaternion => write!(f, "quaternion"),
            Self::Symmetric(n) => write!(f, "symmetric:{n}"),
            Self::BinaryTetrahedral => write!(f, "binary_tetrahedral"),
            Self::BinaryOctahedral => write!(f, "binary_octahedral"),
            Self::BinaryIcosahedral => write!(f, "binary_icosahedral"),
            Self::DirectProduct(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

/// Builds a member of one of the named families.
pub fn builtin_group(family: &GroupFamily) -> Result<FiniteGroup> {
    let group = match family {
        GroupFamily::Cyclic(n) => {
            let n = *n;
            if n == 0 {
                return Err(Error::BadParams("cyclic order must be at least 1".into()));
            }
            let label = |k: &usize| match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                k => format!("x^{k}"),
            };
            FiniteGroup::from_generators_labeled(&[1 % n], |a, b| (a + b) % n, label, n)?.0
        }
        GroupFamily::Dihedral(n) => {
            let n = *n;
            if n == 0 {
                return Err(Error::BadParams("dihedral parameter must be at least 1".into()));
            }
            // (k, f) = r^k s^f
            let mul = |a: &(usize, bool), b: &(usize, bool)| {
                let k = if a.1 { (a.0 + n - b.0) % n } else { (a.0 + b.0) % n };
                (k, a.1 ^ b.1)
            };
            let label = |e: &(usize, bool)| {
                let r = match e.0 {
                    0 => String::new(),
                    1 => "r".to_string(),
                    k => format!("r^{k}"),
                };
                match (r.is_empty(), e.1) {
                    (true, false) => "1".to_string(),
                    (true, true) => "s".to_string(),
                    (false, false) => r,
                    (false, true) => format!("{r}s"),
                }
            };
            FiniteGroup::from_generators_labeled(&[(1 % n, false), (0, true)], mul, label, 2 * n)?.0
        }
        GroupFamily::Quaternion => {
            let gens = [unit_quaternion(0, 1, 0, 0), unit_quaternion(0, 0, 1, 0)];
            let label = |q: &Quaternion| quaternion_unit_label(q);
            FiniteGroup::from_generators_labeled(&gens, |a, b| *a * *b, label, 8)?.0
        }
        GroupFamily::Symmetric(n) => {
            let n = *n;
            if n == 0 || n > MAX_SYMMETRIC_DEGREE {
                return Err(Error::BadParams(format!(
                    "symmetric degree must be in 1..={MAX_SYMMETRIC_DEGREE}"
                )));
            }
            let mut transposition: Vec<u8> = (0..n as u8).collect();
            if n >= 2 {
                transposition.swap(0, 1);
            }
            let cycle: Vec<u8> = (0..n as u8).map(|i| (i + 1) % n as u8).collect();
            // (a∘b)(x) = a(b(x))
            let compose = |a: &Vec<u8>, b: &Vec<u8>| b.iter().map(|&i| a[i as usize]).collect();
            let order: usize = (1..=n).product();
            FiniteGroup::from_generators_labeled(&[transposition, cycle], compose, |p: &Vec<u8>| cycle_notation(p), order)?
                .0
        }
        GroupFamily::BinaryTetrahedral
        | GroupFamily::BinaryOctahedral
        | GroupFamily::BinaryIcosahedral => {
            let gens = binary_polyhedral_generators(family);
            FiniteGroup::from_generators_labeled(&gens, |a, b| *a * *b, Quaternion::label, family.order())?
                .0
        }
        GroupFamily::DirectProduct(a, b) => {
            let ga = builtin_group(a)?;
            let gb = builtin_group(b)?;
            ga.direct_product(&gb)?
        }
    };
    if group.order() != family.order() {
        return Err(Error::NotAGroup(format!(
            "{family} closed to order {}, expected {}",
            group.order(),
            family.order()
        )));
    }
    Ok(group.with_family(family.clone()))
}

fn unit_quaternion(w: i64, x: i64, y: i64, z: i64) -> Quaternion {
    Quaternion::new(
        Biquadratic::int(w),
        Biquadratic::int(x),
        Biquadratic::int(y),
        Biquadratic::int(z),
    )
}

fn quaternion_unit_label(q: &Quaternion) -> String {
    let parts = [(q.w, ""), (q.x, "i"), (q.y, "j"), (q.z, "k")];
    for (c, name) in parts {
        if c == Biquadratic::int(1) {
            return if name.is_empty() { "1".into() } else { name.into() };
        }
        if c == Biquadratic::int(-1) {
            return if name.is_empty() { "-1".into() } else { format!("-{name}") };
        }
    }
    q.label()
}

fn binary_polyhedral_generators(family: &GroupFamily) -> Vec<Quaternion> {
    let half = Biquadratic::frac(1, 2);
    let o = Biquadratic::int(0);
    // (1 + i + j + k)/2, order 6
    let hurwitz = Quaternion::new(half, half, half, half);
    match family {
        GroupFamily::BinaryTetrahedral => vec![unit_quaternion(0, 1, 0, 0), hurwitz],
        GroupFamily::BinaryOctahedral => {
            // (1 + i)/√2
            let c = Biquadratic::sqrt2().scale(Rational64::new(1, 2));
            vec![Quaternion::new(c, c, o, o), hurwitz]
        }
        GroupFamily::BinaryIcosahedral => {
            // (φ + φ⁻¹ i + j)/2 with φ = (1 + √5)/2
            let quarter = Rational64::new(1, 4);
            let s5 = Biquadratic::sqrt5().scale(quarter);
            let phi_half = Biquadratic::frac(1, 4) + s5;
            let inv_phi_half = s5 - Biquadratic::frac(1, 4);
            vec![hurwitz, Quaternion::new(phi_half, inv_phi_half, half, o)]
        }
        _ => unreachable!("not a binary polyhedral family"),
    }
}

fn cycle_notation(p: &[u8]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut x = p[start] as usize;
        while x != start {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x] as usize;
        }
        let body: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
        out.push('(');
        out.push_str(&body.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn biquadratic_to_cyclotomic(b: Biquadratic) -> Cyclotomic {
    let r = |q: Rational64| {
        num_rational::BigRational::new((*q.numer()).into(), (*q.denom()).into())
    };
    let sqrt2 = &Cyclotomic::zeta_power(8, 1) + &Cyclotomic::zeta_power(8, -1);
    let sqrt5 = &Cyclotomic::one(5)
        + &(&Cyclotomic::zeta_power(5, 1) + &Cyclotomic::zeta_power(5, -1))
            .scale(&num_rational::BigRational::from_integer(2.into()));
    let mut acc = Cyclotomic::from_rational(1, r(b.0[0]));
    if b.0[1] != Rational64::from_integer(0) {
        acc += &sqrt2.scale(&r(b.0[1]));
    }
    if b.0[2] != Rational64::from_integer(0) {
        acc += &sqrt5.scale(&r(b.0[2]));
    }
    if b.0[3] != Rational64::from_integer(0) {
        acc += &(&sqrt2 * &sqrt5).scale(&r(b.0[3]));
    }
    acc
}

/// `q ↦ [[a+bi, c+di], [-c+di, a-bi]]`
fn quaternion_matrix(q: &Quaternion) -> CycMatrix {
    let i = Cyclotomic::zeta_power(4, 1);
    let (a, b, c, d) = (
        biquadratic_to_cyclotomic(q.w),
        biquadratic_to_cyclotomic(q.x),
        biquadratic_to_cyclotomic(q.y),
        biquadratic_to_cyclotomic(q.z),
    );
    CycMatrix::from_rows(vec![
        vec![&a + &(&i * &b), &c + &(&i * &d)],
        vec![&(-&c) + &(&i * &d), &a - &(&i * &b)],
    ])
}

/// Images of the family's stored generators under its standard faithful
/// representation (charge-one character for cyclic groups, the 2-dimensional
/// irreducible representation for dihedral, quaternion, `S_3` and binary
/// polyhedral groups).
pub(crate) fn standard_generator_images(family: &GroupFamily) -> Option<Vec<CycMatrix>> {
    let int = |v: i64| Cyclotomic::from_integer(1, v);
    let swap = || CycMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
    match family {
        GroupFamily::Cyclic(n) if *n > 1 => Some(vec![CycMatrix::from_rows(vec![vec![
            Cyclotomic::zeta_power(*n as u32, 1),
        ]])]),
        GroupFamily::Dihedral(n) if *n >= 3 => {
            let z = *n as u32;
            let rot = CycMatrix::from_rows(vec![
                vec![Cyclotomic::zeta_power(z, 1), Cyclotomic::zero(z)],
                vec![Cyclotomic::zero(z), Cyclotomic::zeta_power(z, -1)],
            ]);
            Some(vec![rot, swap()])
        }
        GroupFamily::Symmetric(3) => {
            let rot = CycMatrix::from_rows(vec![
                vec![Cyclotomic::zeta_power(3, 1), Cyclotomic::zero(3)],
                vec![Cyclotomic::zero(3), Cyclotomic::zeta_power(3, 2)],
            ]);
            Some(vec![swap(), rot])
        }
        GroupFamily::Quaternion => Some(vec![
            quaternion_matrix(&unit_quaternion(0, 1, 0, 0)),
            quaternion_matrix(&unit_quaternion(0, 0, 1, 0)),
        ]),
        GroupFamily::BinaryTetrahedral
        | GroupFamily::BinaryOctahedral
        | GroupFamily::BinaryIcosahedral => Some(
            binary_polyhedral_generators(family)
                .iter()
                .map(quaternion_matrix)
                .collect(),
        ),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        for (fam, order) in [
            (GroupFamily::Cyclic(1), 1),
            (GroupFamily::Cyclic(6), 6),
            (GroupFamily::Dihedral(1), 2),
            (GroupFamily::Dihedral(4), 8),
            (GroupFamily::Dihedral(7), 14),
            (GroupFamily::Quaternion, 8),
            (GroupFamily::Symmetric(3), 6),
            (GroupFamily::Symmetric(5), 120),
            (GroupFamily::BinaryTetrahedral, 24),
            (GroupFamily::BinaryOctahedral, 48),
            (GroupFamily::BinaryIcosahedral, 120),
        ] {
            let g = builtin_group(&fam).unwrap();
            assert_eq!(g.order(), order, "{fam}");
        }
    }

    #[test]
    fn cyclic_six_is_abelian() {
        let g = builtin_group(&GroupFamily::Cyclic(6)).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.label(1), "x");
        assert_eq!(g.element_order(1), 6);
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(builtin_group(&GroupFamily::Cyclic(0)), Err(Error::BadParams(_))));
        assert!(matches!(builtin_group(&GroupFamily::Symmetric(9)), Err(Error::BadParams(_))));
        assert!(matches!(GroupFamily::from_name("monster", &[]), Err(Error::UnknownFamily(_))));
        assert!(matches!(GroupFamily::from_name("cyclic", &[]), Err(Error::BadParams(_))));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["cyclic:6", "binary_icosahedral", "product(cyclic:2,product(dihedral:3,quaternion))"] {
            assert_eq!(GroupFamily::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn quaternion_group_labels() {
        let g = builtin_group(&GroupFamily::Quaternion).unwrap();
        let mut labels: Vec<&str> = g.labels().iter().map(String::as_str).collect();
        labels.sort();
        assert_eq!(labels, vec!["-1", "-i", "-j", "-k", "1", "i", "j", "k"]);
    }

    #[test]
    fn symmetric_labels_use_cycles() {
        let g = builtin_group(&GroupFamily::Symmetric(3)).unwrap();
        assert_eq!(g.label(0), "()");
        assert!(g.labels().iter().any(|l| l == "(1 2 3)"));
    }
}
