//! Closed-form spectra of named algebra families.

use std::collections::BTreeSet;
use std::fmt;

use crate::cardinals::Card;
use crate::error::{Error, Result};
use crate::tukey::TukeyType;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CatalogSpec {
    /// The free algebra on `κ` generators.
    Free(Card),
    /// The finite-cofinite algebra on a set of size `κ`.
    FinCofin(Card),
    /// The algebra generated by an almost disjoint family on `κ`, together
    /// with the set of `μ` for which some member has `μ` traces on the others.
    /// That set depends on the family itself, so it is an input here.
    ADFamily(Card, BTreeSet<Card>),
}

impl CatalogSpec {
    pub fn kappa(&self) -> Card {
        match self {
            CatalogSpec::Free(k) | CatalogSpec::FinCofin(k) | CatalogSpec::ADFamily(k, _) => *k,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let kappa = self.kappa();
        if !kappa.is_infinite() {
            return Err(Error::NotInfinite(kappa));
        }
        if let CatalogSpec::ADFamily(_, mus) = self {
            for &mu in mus {
                if !mu.is_infinite() {
                    return Err(Error::NotInfinite(mu));
                }
                if mu > kappa {
                    return Err(Error::MuAboveKappa { mu, kappa });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogSpec::Free(k) => write!(f, "(free {k})"),
            CatalogSpec::FinCofin(k) => write!(f, "(fincofin {k})"),
            CatalogSpec::ADFamily(k, mus) => {
                write!(f, "(adfamily {k} (mus")?;
                for m in mus {
                    write!(f, " {m}")?;
                }
                f.write_str("))")
            }
        }
    }
}

pub fn catalog_spectrum(s: &CatalogSpec) -> Result<BTreeSet<TukeyType>> {
    s.validate()?;
    Ok(match s {
        // every ultrafilter of a free algebra has the top type
        CatalogSpec::Free(k) => BTreeSet::from([TukeyType::top(*k)]),
        // principal ultrafilters and the cofinite one
        CatalogSpec::FinCofin(k) => BTreeSet::from([TukeyType::one(), TukeyType::top(*k)]),
        CatalogSpec::ADFamily(k, mus) => {
            let mut out = BTreeSet::from([TukeyType::one(), TukeyType::top(*k)]);
            out.extend(mus.iter().map(|&m| TukeyType::top(m)));
            out
        }
    })
}
