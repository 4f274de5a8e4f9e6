//! JSON documents exchanged by the command-line tool.
//!
//! Field order is fixed by the struct definitions, and every number is an
//! integer; rationals are written as `["num", "den"]` decimal-string pairs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::closure::{ClosureCertificate, ClosureReport};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::normality::{
    FactorizationCertificate, NormalityCertificate, PowerCertificate, PowerVerdict,
};
use crate::poly::SparsePolynomial;
use crate::ring::{default_variable_names, Monomial, WeightSystem};

/// Variable names and their weights, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescription {
    pub variables: Vec<String>,
    pub weights: Vec<u64>,
}

impl RingDescription {
    /// Names default to `x, y, z, w`, then `x0, x1, ..` for more variables.
    pub fn new(weights: Vec<u64>, variables: Option<Vec<String>>) -> Result<Self> {
        let variables = variables.unwrap_or_else(|| default_variable_names(weights.len()));
        let ring = Self { variables, weights };
        ring.validate()?;
        Ok(ring)
    }

    pub fn validate(&self) -> Result<()> {
        WeightSystem::new(self.weights.clone())?;
        if self.variables.len() != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                found: self.variables.len(),
            });
        }
        for (i, v) in self.variables.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidArgument(format!("invalid variable name `{v}`")));
            }
            if self.variables[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable name `{v}`")));
            }
        }
        Ok(())
    }

    pub fn weight_system(&self) -> Result<WeightSystem> {
        WeightSystem::new(self.weights.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDoc {
    pub weights: Vec<u64>,
    pub variables: Vec<String>,
    pub generators: Vec<Monomial>,
}

impl IdealDoc {
    pub fn new(ideal: &MonomialIdeal, variables: &[String]) -> Self {
        Self {
            weights: ideal.ring().weights().to_vec(),
            variables: variables.to_vec(),
            generators: ideal.generators().to_vec(),
        }
    }

    pub fn ring(&self) -> Result<RingDescription> {
        let ring = RingDescription {
            variables: self.variables.clone(),
            weights: self.weights.clone(),
        };
        ring.validate()?;
        Ok(ring)
    }

    /// The ideal generated by the listed monomials (canonicalized).
    pub fn to_ideal(&self) -> Result<MonomialIdeal> {
        let ring = self.ring()?.weight_system()?;
        MonomialIdeal::minimalize(&ring, self.generators.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictTag {
    Equal,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDoc {
    pub input: Monomial,
    pub factors: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerDoc {
    pub p: u64,
    pub verdict: VerdictTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Monomial>,
    pub factorizations: Vec<FactorizationDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub weights: Vec<u64>,
    pub threshold: u64,
    pub powers: Vec<PowerDoc>,
}

fn verdict_parts(v: &PowerVerdict) -> (VerdictTag, Option<Monomial>) {
    match v {
        PowerVerdict::Equal => (VerdictTag::Equal, None),
        PowerVerdict::Counterexample(m) => (VerdictTag::Counterexample, Some(m.clone())),
    }
}

impl From<&NormalityCertificate> for CertificateDoc {
    fn from(c: &NormalityCertificate) -> Self {
        Self {
            weights: c.ring.weights().to_vec(),
            threshold: c.threshold,
            powers: c
                .powers
                .iter()
                .map(|level| {
                    let (verdict, counterexample) = verdict_parts(&level.verdict);
                    PowerDoc {
                        p: level.p,
                        verdict,
                        counterexample,
                        factorizations: level
                            .factorizations
                            .iter()
                            .map(|f| FactorizationDoc {
                                input: f.input.clone(),
                                factors: f.factors.clone(),
                            })
                            .collect(),
                    }
                })
                .collect(),
        }
    }
}

impl CertificateDoc {
    pub fn to_certificate(&self) -> Result<NormalityCertificate> {
        let ring = WeightSystem::new(self.weights.clone())?;
        let powers = self
            .powers
            .iter()
            .map(|level| {
                let verdict = match (level.verdict, &level.counterexample) {
                    (VerdictTag::Equal, None) => PowerVerdict::Equal,
                    (VerdictTag::Counterexample, Some(m)) => PowerVerdict::Counterexample(m.clone()),
                    _ => {
                        return Err(Error::Parse(format!(
                            "p = {}: verdict and counterexample disagree",
                            level.p
                        )))
                    }
                };
                Ok(PowerCertificate {
                    p: level.p,
                    verdict,
                    factorizations: level
                        .factorizations
                        .iter()
                        .map(|f| FactorizationCertificate {
                            ring: ring.clone(),
                            input: f.input.clone(),
                            p: level.p,
                            factors: f.factors.clone(),
                        })
                        .collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NormalityCertificate {
            ring,
            threshold: self.threshold,
            powers,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerCheckDoc {
    pub weights: Vec<u64>,
    pub variables: Vec<String>,
    pub alpha: u64,
    pub p: u64,
    pub verdict: VerdictTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Monomial>,
}

impl PowerCheckDoc {
    pub fn new(ring: &RingDescription, alpha: u64, p: u64, verdict: &PowerVerdict) -> Self {
        let (verdict, counterexample) = verdict_parts(verdict);
        Self {
            weights: ring.weights.clone(),
            variables: ring.variables.clone(),
            alpha,
            p,
            verdict,
            counterexample,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeDoc {
    pub weights: Vec<u64>,
    pub variables: Vec<String>,
    pub threshold: u64,
    pub p: u64,
    pub input: Monomial,
    pub factors: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCertificateDoc {
    pub monomial: Monomial,
    pub lambda: Vec<[String; 2]>,
    #[serde(rename = "oracle_N")]
    pub oracle_n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureDoc {
    pub weights: Vec<u64>,
    pub variables: Vec<String>,
    pub generators: Vec<Monomial>,
    pub closure: Vec<Monomial>,
    pub added: Vec<Monomial>,
    pub integrally_closed: bool,
    pub certificates: Vec<ClosureCertificateDoc>,
}

fn rational_to_pair(q: &BigRational) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}

fn pair_to_rational(pair: &[String; 2]) -> Result<BigRational> {
    let parse = |s: &str| {
        s.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid integer `{s}` in rational")))
    };
    let (n, d) = (parse(&pair[0])?, parse(&pair[1])?);
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

impl ClosureDoc {
    pub fn new(report: &ClosureReport, variables: &[String]) -> Self {
        Self {
            weights: report.ideal.ring().weights().to_vec(),
            variables: variables.to_vec(),
            generators: report.ideal.generators().to_vec(),
            closure: report.closure.generators().to_vec(),
            added: report.added.clone(),
            integrally_closed: report.integrally_closed,
            certificates: report
                .certificates
                .iter()
                .map(|c| ClosureCertificateDoc {
                    monomial: c.monomial.clone(),
                    lambda: c.lambda.iter().map(rational_to_pair).collect(),
                    oracle_n: c.oracle_n,
                })
                .collect(),
        }
    }

    /// Rebuild the report. Lists that are not already minimal and canonical
    /// are rejected rather than silently repaired.
    pub fn to_report(&self) -> Result<ClosureReport> {
        let ideal_doc = IdealDoc {
            weights: self.weights.clone(),
            variables: self.variables.clone(),
            generators: self.generators.clone(),
        };
        let ideal = ideal_doc.to_ideal()?;
        if ideal.generators() != self.generators.as_slice() {
            return Err(Error::Parse("generators are not minimal and canonical".into()));
        }
        let closure = MonomialIdeal::minimalize(ideal.ring(), self.closure.clone())?;
        if closure.generators() != self.closure.as_slice() {
            return Err(Error::Parse("closure generators are not minimal and canonical".into()));
        }
        let certificates = self
            .certificates
            .iter()
            .map(|c| {
                Ok(ClosureCertificate {
                    monomial: c.monomial.clone(),
                    lambda: c.lambda.iter().map(pair_to_rational).collect::<Result<_>>()?,
                    oracle_n: c.oracle_n,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClosureReport {
            ideal,
            closure,
            added: self.added.clone(),
            integrally_closed: self.integrally_closed,
            certificates,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: i64,
    pub exponents: Monomial,
}

pub fn poly_to_doc(p: &SparsePolynomial) -> Vec<TermDoc> {
    p.terms()
        .map(|(m, c)| TermDoc {
            coeff: c,
            exponents: m.clone(),
        })
        .collect()
}

pub fn poly_from_doc(nvars: usize, terms: &[TermDoc]) -> Result<SparsePolynomial> {
    SparsePolynomial::from_terms(nvars, terms.iter().map(|t| (t.exponents.clone(), t.coeff)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub weights: Vec<u64>,
    pub variables: Vec<String>,
    pub relation: Vec<TermDoc>,
    pub element: Vec<TermDoc>,
    pub coefficients: Vec<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_ideal: Option<Vec<Monomial>>,
    pub remainder: Vec<TermDoc>,
    pub equation_holds: bool,
    pub coefficient_membership: Vec<bool>,
    pub holds: bool,
}

/// A document accepted by `verify`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verifiable {
    Normality(CertificateDoc),
    Closure(ClosureDoc),
}

impl Verifiable {
    pub fn parse(text: &str) -> Result<Self> {
        let as_cert = match serde_json::from_str::<CertificateDoc>(text) {
            Ok(doc) => return Ok(Verifiable::Normality(doc)),
            Err(e) => e,
        };
        let as_closure = match serde_json::from_str::<ClosureDoc>(text) {
            Ok(doc) => return Ok(Verifiable::Closure(doc)),
            Err(e) => e,
        };
        Err(Error::Parse(format!(
            "expected a normality certificate ({as_cert}) or a closure report ({as_closure})"
        )))
    }

    /// All problems found while replaying; empty means verified.
    pub fn violations(&self) -> Vec<String> {
        match self {
            Verifiable::Normality(doc) => match doc.to_certificate() {
                Ok(c) => c.violations(),
                Err(e) => vec![e.to_string()],
            },
            Verifiable::Closure(doc) => match doc.to_report() {
                Ok(r) => r.violations(),
                Err(e) => vec![e.to_string()],
            },
        }
    }
}

/// Parse and replay a certificate or closure report.
pub fn verify_json(text: &str) -> Result<Vec<String>> {
    Ok(Verifiable::parse(text)?.violations())
}
