use num_integer::Integer;

use crate::abelian::abelianization;
use crate::enumeration::{order_of, Certificate, Claim};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, LONGITUDE, MERIDIAN};
use crate::word::{commutator, Word};

/// A knot group with its peripheral pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotGroupData {
    presentation: Presentation,
    meridian: Word,
    longitude: Word,
}

impl KnotGroupData {
    /// Checks that the abelianization is `ℤ`, generated by the meridian,
    /// with the longitude in the kernel.
    pub fn new(presentation: Presentation, meridian: Word, longitude: Word) -> Result<Self> {
        let presentation = presentation
            .with_marked(MERIDIAN, meridian.clone())?
            .with_marked(LONGITUDE, longitude.clone())?;
        let ab = abelianization(&presentation)?;
        if !ab.is_infinite_cyclic() {
            return Err(Error::params(format!(
                "knot group must abelianize to Z, got {ab}"
            )));
        }
        let killed = presentation.quotient_by_normal_closure(std::slice::from_ref(&meridian))?;
        if !abelianization(&killed)?.is_trivial() {
            return Err(Error::params(
                "meridian does not generate the abelianization",
            ));
        }
        let killed = presentation.quotient_by_normal_closure(std::slice::from_ref(&longitude))?;
        if !abelianization(&killed)?.is_infinite_cyclic() {
            return Err(Error::params("longitude is nonzero in the abelianization"));
        }
        Ok(Self {
            presentation,
            meridian,
            longitude,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn meridian(&self) -> &Word {
        &self.meridian
    }

    pub fn longitude(&self) -> &Word {
        &self.longitude
    }
}

/// `⟨a, b | a^p b^-q⟩` with meridian `a^u b^v` (`uq + vp = 1`, `0 ≤ u < p`)
/// and longitude `a^p μ^-pq`.
pub fn torus_knot_group(p: i64, q: i64) -> Result<KnotGroupData> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::params(format!(
            "torus knot parameters ({p}, {q}) must be coprime and at least 2"
        )));
    }
    let u = q.extended_gcd(&p).x.rem_euclid(p);
    let v = (1 - u * q) / p;
    let pres = Presentation::new(
        vec!["a", "b"],
        vec![Word::power_of(0, p).mul(&Word::power_of(1, -q))],
    )?;
    let meridian = Word::power_of(0, u).mul(&Word::power_of(1, v));
    let longitude = Word::power_of(0, p).mul(&meridian.pow(-p * q));
    KnotGroupData::new(pres, meridian, longitude)
}

/// Even twisting: `⟨π₁Σ | t central⟩`.
pub fn branched_cover_pi1_even(sigma: &Presentation, t: &Word) -> Result<Presentation> {
    sigma.centralize(t)
}

/// Odd twisting: the knot group with `μ = λ^(sign·n)` and `μ²` central.
pub fn branched_cover_pi1_odd(k: &KnotGroupData, n: i64, sign: i64) -> Result<Presentation> {
    if sign != 1 && sign != -1 {
        return Err(Error::params(format!("sign must be +1 or -1, got {sign}")));
    }
    let p = &k.presentation;
    let mut extra = vec![k.meridian.mul(&k.longitude.pow(-sign * n))];
    let mu2 = k.meridian.pow(2);
    extra.extend(p.generator_words().map(|g| commutator(&g, &mu2)));
    p.quotient_by_normal_closure(&extra)
}

/// `⟨π | g central⟩`.
pub fn turned_torus_group(p: &Presentation, g: &Word) -> Result<Presentation> {
    p.centralize(g)
}

/// `⟨π_S | μ²⟩` for a 2-knot group with marked meridian.
pub fn rp2_connect_sum_group(s: &Presentation) -> Result<Presentation> {
    let mu = s
        .marked(MERIDIAN)
        .ok_or_else(|| Error::MissingMarked(MERIDIAN.into()))?
        .clone();
    if !abelianization(s)?.is_infinite_cyclic()
        || !abelianization(&s.quotient_by_normal_closure(std::slice::from_ref(&mu))?)?.is_trivial()
    {
        return Err(Error::params(
            "the meridian must generate an abelianization isomorphic to Z",
        ));
    }
    s.quotient_by_normal_closure(&[mu.pow(2)])
}

/// Certifies `S # P` unknotted when its group has order 2.
pub fn rp2_unknotting_check(s: &Presentation, cap: usize) -> Result<Certificate> {
    let g = rp2_connect_sum_group(s)?;
    let step = order_of(&g, "rp2 connected sum group", cap)?;
    let claim = match &step.claim {
        Claim::FiniteOrder { order: 2 } => Claim::TopologicallyUnknotted,
        Claim::FiniteOrder { order } => Claim::Knotted {
            group_order: *order,
        },
        Claim::Inconclusive { reason } => Claim::Inconclusive {
            reason: reason.clone(),
        },
        other => unreachable!("order certificate with claim {other:?}"),
    };
    Ok(Certificate::new(claim, "rp2 connected sum")
        .with_presentation(s)
        .with_parameter("cap", cap)
        .with_step(step))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::torus_section_word;

    #[test]
    fn trefoil_peripheral_pair() {
        let k = torus_knot_group(2, 3).unwrap();
        let p = k.presentation();
        assert_eq!(p.show(&p.relators()[0]), "a^2 b^-3");
        assert_eq!(p.show(k.meridian()), "a b^-1");
        assert_eq!(k.longitude().exponent_sums(2), vec![2 - 6, 6]);
        assert!(torus_knot_group(2, 4).is_err());
    }

    #[test]
    fn odd_cover_presentation() {
        let k = torus_knot_group(2, 3).unwrap();
        let p = branched_cover_pi1_odd(&k, 1, 1).unwrap();
        assert_eq!(p.relators().len(), 4);
        assert!(branched_cover_pi1_odd(&k, 1, 0).is_err());
        let zero = branched_cover_pi1_odd(&k, 0, -1).unwrap();
        assert!(abelianization(&zero).unwrap().is_trivial());
    }

    #[test]
    fn turned_torus_with_identity_is_unchanged_up_to_trivial_relators() {
        let k = torus_knot_group(2, 3).unwrap();
        let t = turned_torus_group(k.presentation(), &Word::identity()).unwrap();
        assert!(t.relators()[1..].iter().all(Word::is_identity));
        let g = turned_torus_group(k.presentation(), &torus_section_word()).unwrap();
        assert_eq!(g.relators().len(), 3);
    }

    #[test]
    fn rp2_on_unknot_and_trefoil() {
        let unknot = Presentation::free(vec!["m"])
            .unwrap()
            .with_marked(MERIDIAN, Word::generator(0))
            .unwrap();
        let c = rp2_unknotting_check(&unknot, 100).unwrap();
        assert_eq!(c.claim, Claim::TopologicallyUnknotted);
        c.verify().unwrap();
        let trefoil = torus_knot_group(2, 3).unwrap();
        let c = rp2_unknotting_check(trefoil.presentation(), 1000).unwrap();
        assert_eq!(c.claim, Claim::Knotted { group_order: 6 });
        c.verify().unwrap();
        let bare = Presentation::free(vec!["m"]).unwrap();
        assert!(matches!(
            rp2_connect_sum_group(&bare),
            Err(Error::MissingMarked(_))
        ));
    }
}
