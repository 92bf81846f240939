//! Randomized re-check of the inversion identities against the matrix oracle.

use std::fmt;

use cliffinv::{
    compose_inverse, default_chain, discriminant_closed_form, oracle_inverse, verify_d_equals_dprime, Error,
    Multivector, Signature,
};
use serde::Serialize;

use crate::json::MultivectorJson;
use crate::sampling::batch;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// `a a⁻¹ = a⁻¹ a = 1` whenever `D ≠ 0`.
    RoundTrip,
    /// `D = 0` iff the regular matrix is singular, and the inverses agree.
    Oracle,
    /// The explicit polynomial equals the chain scalar (`1 <= n <= 4`).
    ClosedForm,
    /// Default and alternate chains agree (`n = 3, 4`).
    DEqualsDPrime,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::RoundTrip,
        Property::Oracle,
        Property::ClosedForm,
        Property::DEqualsDPrime,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Property::RoundTrip => "round-trip",
            Property::Oracle => "oracle",
            Property::ClosedForm => "closed-form",
            Property::DEqualsDPrime => "D=D'",
        }
    }

    pub fn applies_to(self, n: usize) -> bool {
        match self {
            Property::RoundTrip | Property::Oracle => true,
            Property::ClosedForm => (1..=4).contains(&n),
            Property::DEqualsDPrime => (3..=4).contains(&n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub property: Property,
    pub checked: usize,
    pub failed: usize,
    /// The first sample that failed, for reproduction.
    pub first_failure: Option<MultivectorJson>,
}

impl Tally {
    fn new(property: Property) -> Self {
        Tally {
            property,
            checked: 0,
            failed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, sample: &Multivector) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            self.first_failure.get_or_insert_with(|| sample.into());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureReport {
    pub p: usize,
    pub q: usize,
    pub samples: usize,
    pub invertible: usize,
    pub properties: Vec<Tally>,
}

impl SignatureReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|t| t.failed == 0)
    }

    pub fn tally(&self, property: Property) -> Option<&Tally> {
        self.properties.iter().find(|t| t.property == property)
    }
}

impl fmt::Display for SignatureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Cl({},{})  samples {}  invertible {}",
            self.p, self.q, self.samples, self.invertible
        )?;
        for prop in Property::ALL {
            match self.tally(prop) {
                Some(t) => write!(f, "  {} {}/{}", prop.label(), t.checked - t.failed, t.checked)?,
                None => write!(f, "  {} -", prop.label())?,
            }
        }
        if !self.passed() {
            f.write_str("  FAIL")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    pub bound: u32,
    /// Negates every computed inverse; used to check that failures are caught.
    pub inject_fault: bool,
}

/// Runs every applicable property on `config.samples` random elements of `sig`.
pub fn verify_signature(sig: Signature, config: &VerifyConfig) -> Result<SignatureReport, Error> {
    let n = sig.n();
    let chain = default_chain(n)?;
    let one = Multivector::one(sig);
    let mut tallies: Vec<Tally> = Property::ALL
        .into_iter()
        .filter(|p| p.applies_to(n))
        .map(Tally::new)
        .collect();
    let mut invertible = 0;
    for a in batch(sig, config.seed, config.bound, config.samples)? {
        let result = compose_inverse(&a, &chain)?;
        let inverse = if config.inject_fault {
            result.inverse.map(|x| -x)
        } else {
            result.inverse
        };
        let oracle = oracle_inverse(&a);
        for tally in tallies.iter_mut() {
            match tally.property {
                Property::RoundTrip => {
                    if let Some(x) = &inverse {
                        tally.record(&a * x == one && x * &a == one, &a);
                    }
                }
                Property::Oracle => tally.record(inverse == oracle, &a),
                Property::ClosedForm => tally.record(discriminant_closed_form(&a)? == result.discriminant, &a),
                Property::DEqualsDPrime => tally.record(verify_d_equals_dprime(&a)?, &a),
            }
        }
        invertible += usize::from(inverse.is_some());
    }
    Ok(SignatureReport {
        p: sig.p(),
        q: sig.q(),
        samples: config.samples,
        invertible,
        properties: tallies,
    })
}
