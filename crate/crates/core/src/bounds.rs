//! Closed-form lower bounds on colouring counts, compared with exact counts by
//! raising both sides to integer powers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::correspondence::CorrespondenceAssignment;
use crate::counting::CountResult;
use crate::error::{Error, Result};
use crate::graph::{edge_girth, Girth, Graph};
use crate::rational::{self, Rational};
use crate::structure::deficiency;
use crate::subgraph::Subgraph;

/// `coefficient · base^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    #[serde(serialize_with = "decimal")]
    pub coefficient: BigUint,
    pub base: u64,
    #[serde(with = "rational")]
    pub exponent: Rational,
}

fn decimal<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}

impl Threshold {
    pub fn power(base: u64, exponent: Rational) -> Self {
        Threshold {
            coefficient: BigUint::one(),
            base,
            exponent,
        }
    }

    /// Whether `count ≥ c·b^{p/q}`: `count^q ≥ c^q·b^p`, or
    /// `count^q·b^{-p} ≥ c^q` for negative `p`.
    pub fn met_by(&self, count: &BigUint) -> bool {
        let (p, q) = (*self.exponent.numer(), *self.exponent.denom() as u64);
        let lhs: BigUint = Pow::pow(count, q);
        let cq: BigUint = Pow::pow(&self.coefficient, q);
        let b = BigUint::from(self.base);
        if p >= 0 {
            lhs >= cq * Pow::pow(&b, p as u64)
        } else {
            lhs * Pow::pow(&b, p.unsigned_abs()) >= cq
        }
    }

    /// Below one, so any nonzero count meets it.
    pub fn is_vacuous(&self) -> bool {
        *self.exponent.numer() < 0 && self.coefficient.is_one()
    }

    /// The comparison as performed, e.g. `count^67 >= 2^5`.
    pub fn method(&self) -> String {
        let (p, q) = (*self.exponent.numer(), *self.exponent.denom());
        let coef = if self.coefficient.is_one() {
            String::new()
        } else {
            format!("{}^{q} * ", self.coefficient)
        };
        if p >= 0 {
            format!("count^{q} >= {coef}{}^{p}", self.base)
        } else {
            let rhs = if coef.is_empty() { "1".to_string() } else { coef.trim_end_matches(" * ").to_string() };
            format!("count^{q} * {}^{} >= {rhs}", self.base, -p)
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.coefficient.is_one() {
            write!(f, "{}*", self.coefficient)?;
        }
        write!(f, "{}^({})", self.base, rational::format_rational(&self.exponent))
    }
}

/// `2^{v/67}` for planar graphs with a 5-correspondence assignment.
pub fn planar_5cc_bound(v: usize) -> Threshold {
    Threshold::power(2, Ratio::new(v as i64, 67))
}

/// `2^{v/282}` for planar graphs of girth at least five with a 3-correspondence assignment.
pub fn girth5_3cc_bound(v: usize) -> Threshold {
    Threshold::power(2, Ratio::new(v as i64, 282))
}

/// `2^{(v(G|S) − 51·def_3(G|S))/67}` extensions of a precolouring of `S`.
pub fn extension_5cc_bound(g: &Graph, s: &Subgraph) -> Result<Threshold> {
    let d = deficiency(g, s, 3)?;
    Ok(Threshold::power(2, Ratio::new(d.v_diff - 51 * d.def_g, 67)))
}

/// `2^{(v(G|S) − 89·def_5(G|S))/282}` extensions of a precolouring of `S`.
pub fn extension_3cc_bound(g: &Graph, s: &Subgraph) -> Result<Threshold> {
    let d = deficiency(g, s, 5)?;
    Ok(Threshold::power(2, Ratio::new(d.v_diff - 89 * d.def_g, 282)))
}

/// `t^{(S − n − d)/(t − 1)}`.
pub fn alon_furedi(s_sum: i64, n: i64, d: i64, t: u64) -> Result<Threshold> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be at least 2, got {t}")));
    }
    Ok(Threshold::power(t, Ratio::new(s_sum - n - d, t as i64 - 1)))
}

/// `(S, n, d, t)` for a graph with lists: total list size, vertices, edges
/// (the degree of the graph polynomial) and the largest list.
pub fn alon_furedi_params(g: &Graph, a: &CorrespondenceAssignment) -> (i64, i64, i64, u64) {
    let s = a.lists.iter().map(Vec::len).sum::<usize>() as i64;
    let t = a.lists.iter().map(Vec::len).max().unwrap_or(0) as u64;
    (s, g.vertex_count() as i64, g.edge_count() as i64, t)
}

/// `5^{v/12}` for planar graphs with local girth lists.
pub fn local_girth_bound(v: usize) -> Threshold {
    Threshold::power(5, Ratio::new(v as i64, 12))
}

/// `60·2^{v−3}` five-colourings of a planar triangulation.
pub fn birkhoff_lewis_bound(v: usize) -> Result<Threshold> {
    if v < 3 {
        return Err(Error::InvalidArgument(format!("needs at least 3 vertices, got {v}")));
    }
    Ok(Threshold {
        coefficient: BigUint::from(60u8),
        base: 2,
        exponent: Ratio::from_integer(v as i64 - 3),
    })
}

/// `v(G) − Σ_e (1 − 2/g(e))` with `2/∞ = 0`.
pub fn euler_girth_slack(g: &Graph) -> Result<Rational> {
    if g.is_forest() {
        return Err(Error::PreconditionViolation("graph has no cycle".into()));
    }
    let mut slack = Ratio::from_integer(g.vertex_count() as i64);
    for e in g.edges() {
        let share = match edge_girth(g, e)? {
            Girth::Finite(k) => Ratio::new(2, k as i64),
            Girth::Infinite => Ratio::zero(),
        };
        slack -= Ratio::one() - share;
    }
    Ok(slack)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    pub bound_name: String,
    pub threshold: Threshold,
    #[serde(serialize_with = "decimal")]
    pub oracle_count: BigUint,
    pub truncated: bool,
    pub holds: bool,
    pub vacuous: bool,
    /// False when a truncated count fell short: the true count may still meet it.
    pub conclusive: bool,
    pub comparison_method: String,
}

/// Compares a count against a threshold. A truncated count is a lower bound,
/// so it can confirm a bound but not refute it.
pub fn verify_bound(bound_name: &str, count: &CountResult, threshold: &Threshold) -> BoundVerdict {
    let holds = threshold.met_by(&count.count);
    BoundVerdict {
        bound_name: bound_name.to_string(),
        threshold: threshold.clone(),
        oracle_count: count.count.clone(),
        truncated: count.truncated,
        holds,
        vacuous: threshold.is_vacuous() && !count.count.is_zero(),
        conclusive: holds || !count.truncated,
        comparison_method: threshold.method(),
    }
}

/// The bounds the command line can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundName {
    Planar5cc,
    Girth5Threecc,
    Extension5cc,
    Extension3cc,
    AlonFuredi,
    BirkhoffLewis,
    LocalGirth,
    EulerGirth,
    Cheeger52,
    Cheeger270,
}

impl BoundName {
    pub const ALL: [BoundName; 10] = [
        BoundName::Planar5cc,
        BoundName::Girth5Threecc,
        BoundName::Extension5cc,
        BoundName::Extension3cc,
        BoundName::AlonFuredi,
        BoundName::BirkhoffLewis,
        BoundName::LocalGirth,
        BoundName::EulerGirth,
        BoundName::Cheeger52,
        BoundName::Cheeger270,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::Planar5cc => "planar-5cc",
            BoundName::Girth5Threecc => "girth5-3cc",
            BoundName::Extension5cc => "extension-5cc",
            BoundName::Extension3cc => "extension-3cc",
            BoundName::AlonFuredi => "alon-furedi",
            BoundName::BirkhoffLewis => "birkhoff-lewis",
            BoundName::LocalGirth => "local-girth",
            BoundName::EulerGirth => "euler-girth",
            BoundName::Cheeger52 => "cheeger52",
            BoundName::Cheeger270 => "cheeger270",
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundName::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = BoundName::ALL.iter().map(|b| b.as_str()).collect();
                Error::InvalidArgument(format!("unknown bound {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::VertexSet;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn planar_thresholds() {
        assert!(planar_5cc_bound(0).met_by(&big(1)));
        let t = planar_5cc_bound(67);
        assert!(t.met_by(&big(2)) && !t.met_by(&big(1)));
        let t = planar_5cc_bound(5);
        assert!(!t.met_by(&big(1)) && t.met_by(&big(2)));
        assert!(girth5_3cc_bound(5).met_by(&big(30)));
        assert!(!girth5_3cc_bound(5).met_by(&big(0)));
    }

    #[test]
    fn extension_exponents() {
        // S plus one vertex with no neighbours in S
        let s = Graph::empty(2).unwrap();
        let g = s.with_vertex(VertexSet::EMPTY).unwrap();
        let mut h = Subgraph::whole(&s);
        h.vertices = s.vertices();
        assert_eq!(extension_5cc_bound(&g, &h).unwrap().exponent, Ratio::new(154, 67));
        assert_eq!(extension_3cc_bound(&g, &h).unwrap().exponent, Ratio::new(446, 282));
        let g1 = s.with_vertex(VertexSet::singleton(0)).unwrap();
        assert_eq!(extension_3cc_bound(&g1, &h).unwrap().exponent, Ratio::new(179, 282));
        let whole = Subgraph::whole(&g);
        assert!(extension_5cc_bound(&g, &whole).unwrap().exponent <= Ratio::zero());
    }

    #[test]
    fn alon_furedi_examples() {
        let t = alon_furedi(9, 3, 2, 3).unwrap();
        assert!(t.met_by(&big(9)) && !t.met_by(&big(8)));
        assert!(t.met_by(&big(12)));
        // forest with lists of 3: 3^{(v+1)/2}
        let v = 7;
        assert_eq!(alon_furedi(3 * v, v, v - 1, 3).unwrap().exponent, Ratio::new(v + 1, 2));
        assert!(alon_furedi(3, 3, 0, 1).is_err());
    }

    #[test]
    fn local_girth_and_birkhoff() {
        assert!(local_girth_bound(12).met_by(&big(5)) && !local_girth_bound(12).met_by(&big(4)));
        assert!(local_girth_bound(0).met_by(&big(1)));
        assert!(local_girth_bound(4).met_by(&big(120)));
        let b = birkhoff_lewis_bound(4).unwrap();
        assert!(b.met_by(&big(120)) && !b.met_by(&big(119)));
        assert!(birkhoff_lewis_bound(3).unwrap().met_by(&big(60)));
        assert!(birkhoff_lewis_bound(5).unwrap().met_by(&big(240)));
        assert!(!birkhoff_lewis_bound(5).unwrap().met_by(&big(239)));
        assert!(birkhoff_lewis_bound(2).is_err());
    }

    #[test]
    fn slack_values() {
        assert_eq!(euler_girth_slack(&families::cycle(3).unwrap()).unwrap(), Ratio::from_integer(2));
        assert_eq!(euler_girth_slack(&families::cycle(5).unwrap()).unwrap(), Ratio::from_integer(2));
        // a triangle with a pendant edge: the pendant edge costs 1, the vertex gives 1
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(euler_girth_slack(&g).unwrap(), Ratio::from_integer(2));
        assert!(euler_girth_slack(&families::path(4).unwrap()).is_err());
    }

    #[test]
    fn verdicts() {
        let c = CountResult::exact(big(30));
        let v = verify_bound("girth5-3cc", &c, &girth5_3cc_bound(5));
        assert!(v.holds && v.conclusive && !v.vacuous);
        assert_eq!(v.comparison_method, "count^282 >= 2^5");
        let v = verify_bound("x", &CountResult::exact(big(0)), &planar_5cc_bound(1));
        assert!(!v.holds);
        let neg = Threshold::power(2, Ratio::new(-3, 67));
        let v = verify_bound("x", &CountResult::exact(big(1)), &neg);
        assert!(v.holds && v.vacuous);
        let trunc = CountResult {
            count: big(1),
            explored_nodes: 5,
            truncated: true,
        };
        let v = verify_bound("x", &trunc, &planar_5cc_bound(67));
        assert!(!v.holds && !v.conclusive);
    }

    #[test]
    fn names_round_trip() {
        for b in BoundName::ALL {
            assert_eq!(b.as_str().parse::<BoundName>().unwrap(), b);
        }
        assert!("nope".parse::<BoundName>().is_err());
    }
}
