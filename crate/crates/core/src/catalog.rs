//! Spectral input data for a pair `(W, L)`.
//!
//! The whole construction only sees the constant eigenvalues `μ_k` of
//! `2π c_1(L; h)` with respect to the Kähler-Einstein form `ω_0` on `W`
//! (normalised so that `Ric(ω_0) = ω_0`). A [`FanoBaseSpec`] is that multiset,
//! kept in a normal form: sorted ascending by `μ`, equal values merged.
//!
//! Three families come with constructors:
//!
//! * products of projective spaces `∏ P^{n_i}` with `L = ⊗ p_i^* O(ν_i)`:
//!   `K^{-1}_{P^{n_i}} = O(n_i + 1)`, so each factor contributes
//!   `μ = ν_i/(n_i + 1)` with multiplicity `n_i`;
//! * Grassmannians `Gr(k, p)` with `L = A(k,p)^ν`: since
//!   `K^{-1} = A(k,p)^k`, the Kähler-Einstein form represents `c_1(A)` up to
//!   the factor `k`, giving `μ = ν/k` with multiplicity `p(k - p)`. This
//!   eigenvalue is derived from the bundle isomorphism rather than quoted;
//! * Kähler-Einstein hypersurfaces `W` of degree `n` in `P^{n+1}` (Fermat
//!   type, `n ≥ 3`) with `L = O(1)|_W`: adjunction gives `K_W = O(-2)|_W`,
//!   so `L^2 = K_W^{-1}` and every eigenvalue is `1/2`, multiplicity `n`.
//!
//! Whether `W` really carries a Kähler-Einstein metric is taken on trust.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{fraction_string, parse_rational};

/// One eigenvalue with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    #[serde(with = "fraction_string")]
    pub mu: BigRational,
    pub multiplicity: u32,
}

impl SpectrumEntry {
    pub fn new(mu: BigRational, multiplicity: u32) -> Self {
        Self { mu, multiplicity }
    }
}

/// Validated eigenvalue spectrum of `(W, L)`.
///
/// Equality ignores the label: two specs are equal iff their normalised entry
/// lists agree.
#[derive(Debug, Clone, Serialize)]
pub struct FanoBaseSpec {
    label: String,
    entries: Vec<SpectrumEntry>,
}

impl PartialEq for FanoBaseSpec {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for FanoBaseSpec {}

impl FanoBaseSpec {
    /// Validates and normalises a spectrum.
    ///
    /// Every `μ` must lie in the open interval `(-1, 1)` and every
    /// multiplicity must be positive.
    pub fn new(label: impl Into<String>, entries: Vec<SpectrumEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySpec);
        }
        let one = BigRational::one();
        let mut merged: Vec<SpectrumEntry> = Vec::with_capacity(entries.len());
        let mut sorted = entries;
        sorted.sort_by(|a, b| a.mu.cmp(&b.mu));
        for e in sorted {
            if e.mu.abs() >= one {
                return Err(Error::EigenvalueOutOfRange { mu: e.mu.to_string() });
            }
            if e.multiplicity == 0 {
                return Err(Error::InvalidSpec(format!("multiplicity of μ = {} must be positive", e.mu)));
            }
            match merged.last_mut() {
                Some(last) if last.mu == e.mu => last.multiplicity += e.multiplicity,
                _ => merged.push(e),
            }
        }
        Ok(Self { label: label.into(), entries: merged })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    /// Complex dimension `n` of `W`.
    pub fn dimension(&self) -> u32 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// The eigenvalues with multiplicity, ascending.
    pub fn eigenvalues(&self) -> impl Iterator<Item = &BigRational> {
        self.entries.iter().flat_map(|e| std::iter::repeat_n(&e.mu, e.multiplicity as usize))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            label: String,
            entries: Vec<SpectrumEntry>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        Self::new(raw.label, raw.entries)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

impl fmt::Display for FanoBaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.label)?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", e.mu, e.multiplicity)?;
        }
        write!(f, "]")
    }
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds a spec from `(μ, multiplicity)` pairs with a generic label.
pub fn make_spec(entries: Vec<(BigRational, u32)>) -> Result<FanoBaseSpec> {
    let label = entries
        .iter()
        .map(|(mu, m)| format!("({mu}, {m})"))
        .collect::<Vec<_>>()
        .join(" ");
    FanoBaseSpec::new(
        format!("spectrum {label}"),
        entries.into_iter().map(|(mu, m)| SpectrumEntry::new(mu, m)).collect(),
    )
}

/// `W = ∏ P^{n_i}`, `L = ⊗ p_i^* O(ν_i)`, requiring `-(n_i + 1) < ν_i < n_i + 1`.
pub fn product_projective_spaces(dims: &[u32], twists: &[i64]) -> Result<FanoBaseSpec> {
    if dims.len() != twists.len() {
        return Err(Error::InvalidSpec(format!(
            "{} dimensions but {} twists",
            dims.len(),
            twists.len()
        )));
    }
    if dims.is_empty() {
        return Err(Error::EmptySpec);
    }
    let mut entries = Vec::with_capacity(dims.len());
    for (&n, &nu) in dims.iter().zip(twists) {
        if n == 0 {
            return Err(Error::InvalidSpec("projective factor of dimension 0".into()));
        }
        let bound = i64::from(n) + 1;
        let mu = frac(nu, bound);
        if nu <= -bound || nu >= bound {
            return Err(Error::EigenvalueOutOfRange { mu: mu.to_string() });
        }
        entries.push(SpectrumEntry::new(mu, n));
    }
    let factors = dims.iter().map(|n| format!("P^{n}")).collect::<Vec<_>>().join(" x ");
    let nus = twists.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    FanoBaseSpec::new(format!("{factors}, nu=({nus})"), entries)
}

/// Whether `Gr(k, p)` gives a non-toric `S_W^L` (true for `2 ≤ p ≤ k - 2`).
pub fn grassmannian_is_non_toric(k: u32, p: u32) -> bool {
    p >= 2 && p + 2 <= k
}

/// `W = Gr(k, p)`, `L = A(k,p)^ν`, requiring `1 ≤ p ≤ k - 1` and `-k < ν < k`.
pub fn grassmannian(k: u32, p: u32, nu: i64) -> Result<FanoBaseSpec> {
    if p == 0 || p >= k {
        return Err(Error::InvalidSpec(format!("Gr({k},{p}) needs 1 <= p <= k-1")));
    }
    let kk = i64::from(k);
    let mu = frac(nu, kk);
    if nu <= -kk || nu >= kk {
        return Err(Error::EigenvalueOutOfRange { mu: mu.to_string() });
    }
    let mut label = format!("Gr({k},{p}), L=A^{nu}");
    if grassmannian_is_non_toric(k, p) {
        label.push_str(" (non-toric)");
    }
    FanoBaseSpec::new(label, vec![SpectrumEntry::new(mu, p * (k - p))])
}

/// Fermat-type Kähler-Einstein hypersurface of degree `n` in `P^{n+1}`, `L = O(1)|_W`.
pub fn fermat_hypersurface(n: u32) -> Result<FanoBaseSpec> {
    if n < 3 {
        return Err(Error::InvalidSpec(format!("hypersurface family needs n >= 3, got {n}")));
    }
    let mut label = format!("degree-{n} hypersurface in P^{}, L=O(1)", n + 1);
    if n == 3 {
        label.push_str(" (cubic threefold, non-toric)");
    }
    FanoBaseSpec::new(label, vec![SpectrumEntry::new(frac(1, 2), n)])
}

/// A built-in family, as listed by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub grammar: &'static str,
    pub base: &'static str,
    pub line_bundle: &'static str,
    pub eigenvalues: &'static str,
    pub bounds: &'static str,
    pub toric: &'static str,
}

pub fn families() -> Vec<FamilyInfo> {
    vec![
        FamilyInfo {
            name: "pp",
            grammar: "pp:n1,n2,.../v1,v2,...",
            base: "P^{n1} x P^{n2} x ...",
            line_bundle: "tensor of p_i^* O(v_i)",
            eigenvalues: "mu = v_i/(n_i+1), multiplicity n_i",
            bounds: "-(n_i+1) < v_i < n_i+1",
            toric: "always toric",
        },
        FamilyInfo {
            name: "gr",
            grammar: "gr:k,p,v",
            base: "Gr(k,p), dimension p(k-p)",
            line_bundle: "A(k,p)^v with K^-1 = A(k,p)^k",
            eigenvalues: "mu = v/k, multiplicity p(k-p)",
            bounds: "1 <= p <= k-1, -k < v < k",
            toric: "non-toric when 2 <= p <= k-2",
        },
        FamilyInfo {
            name: "fermat",
            grammar: "fermat:n",
            base: "Fermat hypersurface of degree n in P^{n+1}",
            line_bundle: "O(1)|_W with K_W = O(-2)|_W",
            eigenvalues: "mu = 1/2, multiplicity n",
            bounds: "n >= 3",
            toric: "non-toric for n = 3 (cubic threefold)",
        },
        FamilyInfo {
            name: "dp1",
            grammar: "dp1",
            base: "P^1 (M is P^2 blown up at one point)",
            line_bundle: "O(1)",
            eigenvalues: "mu = 1/2, multiplicity 1",
            bounds: "alias of pp:1/1",
            toric: "toric",
        },
    ]
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| Error::InvalidSpec(format!("bad {what} {t:?}"))))
        .collect()
}

/// Parses a catalog name: `dp1`, `pp:n1,n2/v1,v2`, `gr:k,p,v`, `fermat:n`,
/// or `spec:mu1^m1,mu2^m2` for a raw spectrum (multiplicity optional).
pub fn parse_catalog_name(name: &str) -> Result<FanoBaseSpec> {
    let name = name.trim();
    if name == "dp1" {
        return Ok(product_projective_spaces(&[1], &[1])?.with_label("P^1, L=O(1) (del Pezzo dP1)"));
    }
    let (family, args) = name
        .split_once(':')
        .ok_or_else(|| Error::InvalidSpec(format!("unknown catalog name {name:?}")))?;
    match family {
        "pp" => {
            let (dims, twists) = args
                .split_once('/')
                .ok_or_else(|| Error::InvalidSpec(format!("expected pp:dims/twists, got {name:?}")))?;
            product_projective_spaces(&parse_list(dims, "dimension")?, &parse_list(twists, "twist")?)
        }
        "gr" => match parse_list::<i64>(args, "Grassmannian parameter")?.as_slice() {
            &[k, p, nu] if k > 0 && p >= 0 => grassmannian(k as u32, p as u32, nu),
            _ => Err(Error::InvalidSpec(format!("expected gr:k,p,v, got {name:?}"))),
        },
        "fermat" => {
            let n = args
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidSpec(format!("expected fermat:n, got {name:?}")))?;
            fermat_hypersurface(n)
        }
        "spec" => {
            let mut entries = Vec::new();
            for tok in args.split(',') {
                let (mu, m) = match tok.split_once('^') {
                    Some((mu, m)) => (mu, m.trim().parse::<u32>().map_err(|_| Error::InvalidSpec(format!("bad multiplicity in {tok:?}")))?),
                    None => (tok, 1),
                };
                let mu = parse_rational(mu).ok_or_else(|| Error::InvalidSpec(format!("bad eigenvalue {mu:?}")))?;
                entries.push((mu, m));
            }
            make_spec(entries)
        }
        _ => Err(Error::InvalidSpec(format!("unknown family {family:?}"))),
    }
}

/// Resolves a CLI spec source: an existing JSON file path, else a catalog name.
pub fn resolve_source(source: &str) -> Result<FanoBaseSpec> {
    let path = Path::new(source);
    if path.is_file() {
        FanoBaseSpec::from_json_file(path)
    } else {
        parse_catalog_name(source)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_spec_examples() {
        let s = make_spec(vec![(frac(1, 2), 1)]).unwrap();
        assert_eq!(s.dimension(), 1);
        let t = make_spec(vec![(frac(0, 1), 3)]).unwrap();
        assert_eq!(t.dimension(), 3);
        assert!(t.eigenvalues().all(|m| *m == frac(0, 1)));
        assert_eq!(
            make_spec(vec![(frac(1, 1), 1)]),
            Err(Error::EigenvalueOutOfRange { mu: "1".into() })
        );
        assert!(matches!(make_spec(vec![(frac(-1, 1), 2)]), Err(Error::EigenvalueOutOfRange { .. })));
        assert_eq!(make_spec(vec![]), Err(Error::EmptySpec));
        assert!(matches!(make_spec(vec![(frac(0, 1), 0)]), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn normal_form_sorts_and_merges() {
        let s = make_spec(vec![(frac(1, 3), 2), (frac(-1, 2), 1), (frac(1, 3), 1)]).unwrap();
        assert_eq!(
            s.entries(),
            &[SpectrumEntry::new(frac(-1, 2), 1), SpectrumEntry::new(frac(1, 3), 3)]
        );
        let ev: Vec<_> = s.eigenvalues().cloned().collect();
        assert_eq!(ev, vec![frac(-1, 2), frac(1, 3), frac(1, 3), frac(1, 3)]);
    }

    #[test]
    fn projective_products() {
        let dp = product_projective_spaces(&[1], &[1]).unwrap();
        assert_eq!(dp, make_spec(vec![(frac(1, 2), 1)]).unwrap());
        let z = product_projective_spaces(&[2, 3], &[0, 0]).unwrap();
        assert_eq!(z.entries(), &[SpectrumEntry::new(frac(0, 1), 5)]);
        assert!(matches!(product_projective_spaces(&[1], &[2]), Err(Error::EigenvalueOutOfRange { .. })));
        assert!(matches!(product_projective_spaces(&[2], &[-3]), Err(Error::EigenvalueOutOfRange { .. })));
        assert!(matches!(product_projective_spaces(&[1, 2], &[1]), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn grassmannians() {
        let g = grassmannian(4, 2, 1).unwrap();
        assert_eq!(g.entries(), &[SpectrumEntry::new(frac(1, 4), 4)]);
        assert!(g.label().contains("non-toric"));
        let z = grassmannian(5, 2, 0).unwrap();
        assert_eq!(z.entries(), &[SpectrumEntry::new(frac(0, 1), 6)]);
        assert!(!grassmannian(3, 1, 1).unwrap().label().contains("non-toric"));
        assert!(matches!(grassmannian(3, 1, 3), Err(Error::EigenvalueOutOfRange { .. })));
        assert!(matches!(grassmannian(3, 3, 0), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn hypersurfaces() {
        assert_eq!(fermat_hypersurface(3).unwrap().entries(), &[SpectrumEntry::new(frac(1, 2), 3)]);
        assert_eq!(fermat_hypersurface(4).unwrap().entries(), &[SpectrumEntry::new(frac(1, 2), 4)]);
        assert!(matches!(fermat_hypersurface(2), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn catalog_names() {
        assert_eq!(parse_catalog_name("dp1").unwrap(), make_spec(vec![(frac(1, 2), 1)]).unwrap());
        assert_eq!(parse_catalog_name("pp:1/1").unwrap(), make_spec(vec![(frac(1, 2), 1)]).unwrap());
        assert_eq!(parse_catalog_name("gr:4,2,1").unwrap(), grassmannian(4, 2, 1).unwrap());
        assert_eq!(parse_catalog_name("fermat:3").unwrap(), fermat_hypersurface(3).unwrap());
        assert_eq!(
            parse_catalog_name("spec:-1/2,1/3^2").unwrap(),
            make_spec(vec![(frac(-1, 2), 1), (frac(1, 3), 2)]).unwrap()
        );
        for bad in ["", "xx", "pp:1", "pp:a/1", "gr:4,2", "fermat:x", "nope:1"] {
            assert!(matches!(parse_catalog_name(bad), Err(Error::InvalidSpec(_))), "{bad}");
        }
    }

    #[test]
    fn json_format() {
        let text = r#"{"label": "test", "entries": [{"mu": "1/2", "multiplicity": 1}, {"mu": "-1/3", "multiplicity": 2}]}"#;
        let s = FanoBaseSpec::from_json(text).unwrap();
        assert_eq!(s.label(), "test");
        assert_eq!(s.entries()[0], SpectrumEntry::new(frac(-1, 3), 2));
        assert_eq!(FanoBaseSpec::from_json(&s.to_json()).unwrap(), s);
        assert!(matches!(
            FanoBaseSpec::from_json(r#"{"label":"x","entries":[{"mu":"3/2","multiplicity":1}]}"#),
            Err(Error::EigenvalueOutOfRange { .. })
        ));
        assert!(matches!(FanoBaseSpec::from_json("{"), Err(Error::InvalidSpec(_))));
        assert!(matches!(
            FanoBaseSpec::from_json(r#"{"entries":[{"mu":"x","multiplicity":1}]}"#),
            Err(Error::InvalidSpec(_))
        ));
    }
}
