//! Density caps, crossing-number lower bounds, and the edge-peeling argument.
//!
//! Everything here is exact rational arithmetic. Decimal strings only appear
//! in display helpers with a stated rounding direction and are never fed back
//! into a comparison.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{BigInt, Signed, ToPrimitive};
use serde::ser::{Serialize, SerializeMap, Serializer};
use thiserror::Error;

use crate::configs::{detect, ConfigKind};
use crate::planemap::{remove_graph_edges, CombinatorialMap, EdgeId};
use crate::ratio::{ceil_ratio, fmt_ratio, int, int_u, ratio, zero, Ratio};

#[derive(Error, Debug, PartialEq, Eq)]
pub enum BoundError {
    #[error("linear bound coefficients must be positive")]
    NonpositiveCoefficient,
    #[error("density coefficients need k >= 2, got k = {0}")]
    KTooSmall(u64),
    #[error("unknown density class `{0}`")]
    UnknownClass(String),
    #[error("m = {m} puts n = {n} beyond the {class} density cap {cap}")]
    BeyondDensity {
        class: &'static str,
        n: u64,
        m: u64,
        cap: String,
    },
    #[error("peeling needs a map with at least 3 real vertices")]
    MapTooSmall,
}

/// A lower bound of the form cr(G) >= a*m - b*(n-2), valid for simple graphs.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearBound {
    /// Self-describing display form, also used in reports.
    pub name: &'static str,
    pub a: Ratio,
    pub b: Ratio,
}

impl LinearBound {
    pub fn value(&self, n: u64, m: u64) -> Ratio {
        &self.a * int_u(m) - &self.b * (int_u(n) - int(2))
    }
}

/// The four built-in linear bounds, weakest to strongest slope.
pub fn builtin_linear_bounds() -> Vec<LinearBound> {
    vec![
        LinearBound {
            name: "m - 3(n-2)",
            a: int(1),
            b: int(3),
        },
        LinearBound {
            name: "(7/3)m - (25/3)(n-2)",
            a: ratio(7, 3),
            b: ratio(25, 3),
        },
        LinearBound {
            name: "(37/9)m - (155/9)(n-2)",
            a: ratio(37, 9),
            b: ratio(155, 9),
        },
        LinearBound {
            name: "5m - (203/9)(n-2)",
            a: int(5),
            b: ratio(203, 9),
        },
    ]
}

/// Output of the probabilistic amplification of a linear bound: the cubic
/// coefficient c with cr(G) >= c*m^3/n^2 and the sampling ratio p* with
/// p = pStar*n/m at the optimum.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossingLemmaConstant {
    pub c: Ratio,
    pub p_star: Ratio,
}

/// Turn cr(G) >= a*m - b*(n-2) into a cubic bound. c = 4a^3/(27b^2) and
/// pStar = 3b/(2a); the optimum of a/x^2 - b/x^3 at x = pStar is re-checked
/// as an exact identity.
pub fn crossing_lemma_from_linear(
    a: &Ratio,
    b: &Ratio,
) -> Result<CrossingLemmaConstant, BoundError> {
    if !a.is_positive() || !b.is_positive() {
        return Err(BoundError::NonpositiveCoefficient);
    }
    let c = int(4) * a * a * a / (int(27) * b * b);
    let p_star = int(3) * b / (int(2) * a);
    let x2 = &p_star * &p_star;
    let x3 = &x2 * &p_star;
    assert_eq!(a / x2 - b / x3, c, "optimum value must equal 4a^3/(27b^2)");
    Ok(CrossingLemmaConstant { c, p_star })
}

fn strongest_lemma() -> CrossingLemmaConstant {
    crossing_lemma_from_linear(&int(5), &ratio(203, 9)).expect("coefficients are positive")
}

/// m/n ratio above which the pure cubic bound applies.
pub fn cubic_threshold() -> Ratio {
    strongest_lemma().p_star
}

pub fn cubic_applies(n: u64, m: u64) -> bool {
    int_u(m) >= cubic_threshold() * int_u(n)
}

/// The cubic bound (1500/41209)m^3/n^2, with the additive correction
/// -(54791/41209)n below the threshold where the pure form is not valid.
pub fn cubic_bound(n: u64, m: u64) -> Ratio {
    debug_assert!(n >= 1);
    let mm = int_u(m);
    let nn = int_u(n);
    let pure = strongest_lemma().c * &mm * &mm * &mm / (&nn * &nn);
    if cubic_applies(n, m) {
        pure
    } else {
        pure - ratio(54791, 41209) * nn
    }
}

/// Best known crossing-number lower bound for a simple graph: the maximum of
/// zero, the four linear bounds, and the applicable cubic branch.
pub fn best_crossing_lower_bound(n: u64, m: u64) -> Ratio {
    let mut best = zero();
    for lb in builtin_linear_bounds() {
        best = best.max(lb.value(n, m));
    }
    best.max(cubic_bound(n, m))
}

/// k/(2c): the squared density slope obtained by playing a cubic lower bound
/// against the trivial upper bound cr(G) <= k*m/2.
pub fn kappa_squared(c: &Ratio, k: u64) -> Ratio {
    int_u(k) / (int(2) * c)
}

/// Squared slope kappa^2 with m <= sqrt(kappa^2)*n for k-planar graphs,
/// i.e. kappa^2 = k*41209/3000. Exact; take the root only for display.
pub fn k_planar_density_cap(k: u64) -> Result<Ratio, BoundError> {
    if k < 2 {
        return Err(BoundError::KTooSmall(k));
    }
    Ok(kappa_squared(&strongest_lemma().c, k))
}

/// An edge-density cap of the form m <= slope*n + offset.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineBound {
    pub slope: Ratio,
    pub offset: Ratio,
}

impl AffineBound {
    pub fn value(&self, n: u64) -> Ratio {
        &self.slope * int_u(n) + &self.offset
    }
}

pub const DENSITY_CLASSES: [&str; 9] = [
    "planar",
    "1planar",
    "2planar",
    "2planar-F25free",
    "2planar-F25F26free",
    "3planar-F36free",
    "3planar-nonsimple",
    "3planar-simple",
    "4planar",
];

/// Edge-density cap for a drawing class.
pub fn density_cap(class: &str) -> Result<AffineBound, BoundError> {
    let (slope, offset) = match class {
        "planar" => (int(3), int(-6)),
        "1planar" => (int(4), int(-8)),
        "2planar" => (int(5), int(-10)),
        "2planar-F25free" => (ratio(9, 2), int(-9)),
        "2planar-F25F26free" => (ratio(13, 3), ratio(-26, 3)),
        "3planar-F36free" => (int(5), int(-10)),
        "3planar-nonsimple" => (ratio(11, 2), int(-11)),
        "3planar-simple" => (ratio(11, 2), int(-12)),
        "4planar" => (int(6), int(-12)),
        other => return Err(BoundError::UnknownClass(other.to_string())),
    };
    Ok(AffineBound { slope, offset })
}

/// Guaranteed number of dense configurations in any drawing of the class:
/// x = max(0, ceil(m - base(n))) with base = (13/3)(n-2) for 2-planar
/// (counting F25/F26 together) and 5(n-2) for 3-planar (counting F36).
pub fn min_config_count(n: u64, m: u64, class: &str) -> Result<u64, BoundError> {
    let (base, cap, label): (Ratio, Ratio, &'static str) = match class {
        "2planar" => (ratio(13, 3), int(5), "2planar"),
        "3planar" => (int(5), ratio(11, 2), "3planar"),
        other => return Err(BoundError::UnknownClass(other.to_string())),
    };
    let n2 = int_u(n) - int(2);
    let cap = cap * &n2;
    if int_u(m) > cap {
        return Err(BoundError::BeyondDensity {
            class: label,
            n,
            m,
            cap: fmt_ratio(&cap),
        });
    }
    let x = ceil_ratio(&(int_u(m) - base * n2));
    if x.is_positive() {
        Ok(x.to_integer().to_u64().expect("count fits in u64"))
    } else {
        Ok(0)
    }
}

/// One evaluated bound for a report.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedBound {
    pub name: String,
    pub value: Ratio,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    pub m: u64,
    pub bounds: Vec<NamedBound>,
    pub best: Ratio,
    pub cubic_applies: bool,
    pub caveats: Vec<String>,
}

/// Evaluate every crossing-number lower bound at (n, m).
pub fn bound_report(n: u64, m: u64) -> BoundReport {
    let mut bounds: Vec<NamedBound> = builtin_linear_bounds()
        .into_iter()
        .map(|lb| NamedBound {
            name: lb.name.to_string(),
            value: lb.value(n, m),
        })
        .collect();
    let applies = cubic_applies(n, m);
    bounds.push(NamedBound {
        name: if applies {
            "(1500/41209)m^3/n^2".to_string()
        } else {
            "(1500/41209)m^3/n^2 - (54791/41209)n".to_string()
        },
        value: cubic_bound(n, m),
    });
    let best = best_crossing_lower_bound(n, m);
    BoundReport {
        n,
        m,
        bounds,
        best,
        cubic_applies: applies,
        caveats: Vec::new(),
    }
}

/// As `bound_report`, with n and m read off a map and a caveat when the map
/// is a multigraph (the bounds cite simple-graph results).
pub fn bound_report_for_map(map: &CombinatorialMap) -> BoundReport {
    let mut report = bound_report(map.real_count() as u64, map.edge_count() as u64);
    if !is_simple(map) {
        report
            .caveats
            .push("map has parallel edges or loops; bounds assume a simple graph".to_string());
    }
    report
}

fn is_simple(map: &CombinatorialMap) -> bool {
    let mut seen = BTreeSet::new();
    map.edges().iter().all(|e| {
        let [u, v] = e.endpoints;
        u != v && seen.insert((u.min(v), u.max(v)))
    })
}

/// Both sides of the pentagon/hexagon counting inequality on the residual
/// stage. Reported, never asserted: it presupposes a crossing-minimal input.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualCheck {
    /// cPent + cHex.
    pub lhs: u64,
    /// (2/3)(n-2) - (4/3)m3 - m3minus + m0.
    pub rhs: Ratio,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeelReport {
    pub n: u64,
    pub m: u64,
    /// Edges removed with >= 5 crossings.
    pub m5plus: u64,
    /// Edges removed with exactly 4 crossings.
    pub m4: u64,
    /// 3-crossing edges removed out of detected full-hexagon configurations.
    pub m3: u64,
    /// The two further 3-crossing partner edges removed per broken
    /// configuration (2*m3 when every partner was still present).
    pub pair_removed: u64,
    /// Remaining removals down to max crossing number 2.
    pub m3minus: u64,
    /// Edges left after all phases.
    pub remaining: u64,
    /// Pentagon configurations detected in the residual stage.
    pub c_pent: u64,
    /// Hexagon configurations detected in the residual stage.
    pub c_hex: u64,
    /// Absent boundary edges over the surviving configurations.
    pub m0: u64,
    pub lower_bound_value: Ratio,
    /// True when m <= 5(n-2) and nothing was peeled.
    pub fallback: bool,
    /// The bound presupposes a crossing-minimal drawing; always true.
    pub conditional: bool,
    pub residual_check: ResidualCheck,
    pub caveats: Vec<String>,
}

/// The six chords of the full hexagon configuration that carry 3 crossings,
/// split into the two disjoint perfect matchings used for partner removal.
const CHORD_TRIPLES: [[(usize, usize); 3]; 2] =
    [[(0, 2), (3, 5), (1, 4)], [(2, 4), (0, 3), (1, 5)]];

/// Working copy of a map that keeps, for every current edge, the index of
/// the original edge it came from. Removal relabels parallel edges, so the
/// identity is re-derived after each rebuild from the invariant that
/// surviving strands keep their relative discovery order per endpoint pair.
struct PeelState {
    map: CombinatorialMap,
    origin: Vec<usize>,
    orig_pairs: Vec<(String, String)>,
}

impl PeelState {
    fn new(map: &CombinatorialMap) -> Self {
        let orig_pairs = (0..map.edge_count())
            .map(|i| endpoint_pair(map, EdgeId(i as u32)))
            .collect();
        PeelState {
            map: map.clone(),
            origin: (0..map.edge_count()).collect(),
            orig_pairs,
        }
    }

    fn remove(&mut self, e: EdgeId) {
        let raw = remove_graph_edges(&self.map, &[e])
            .expect("single-edge removal never strands a crossing");
        let next = raw
            .validate()
            .expect("removing a graph edge keeps the map valid");
        let survivors: Vec<usize> = self
            .origin
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != e.0 as usize)
            .map(|(_, &o)| o)
            .collect();
        let mut queues: BTreeMap<(String, String), VecDeque<usize>> = BTreeMap::new();
        for &o in &survivors {
            queues
                .entry(self.orig_pairs[o].clone())
                .or_default()
                .push_back(o);
        }
        let mut origin = Vec::with_capacity(next.edge_count());
        for i in 0..next.edge_count() {
            let pair = endpoint_pair(&next, EdgeId(i as u32));
            let o = queues
                .get_mut(&pair)
                .and_then(|q| q.pop_front())
                .expect("every rebuilt edge matches a surviving original");
            origin.push(o);
        }
        self.map = next;
        self.origin = origin;
    }

    fn current_id_of(&self, orig: usize) -> Option<EdgeId> {
        self.origin
            .iter()
            .position(|&o| o == orig)
            .map(|i| EdgeId(i as u32))
    }

    fn max_crossings(&self) -> usize {
        self.map
            .edges()
            .iter()
            .map(|e| e.crossings.len())
            .max()
            .unwrap_or(0)
    }

    /// Lexicographically least edge label among those with `count` crossings.
    fn least_with_crossings(&self, count: usize) -> Option<EdgeId> {
        self.map
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.crossings.len() == count)
            .min_by(|(_, a), (_, b)| a.label.cmp(&b.label))
            .map(|(i, _)| EdgeId(i as u32))
    }
}

fn endpoint_pair(map: &CombinatorialMap, e: EdgeId) -> (String, String) {
    let [u, v] = map.edge(e).endpoints;
    let (a, b) = (map.node_label(u).to_string(), map.node_label(v).to_string());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Run the deletion phases of the peeling argument on a validated map and
/// report phase counts, the residual configuration census, and the resulting
/// conditional lower bound on the crossing number.
pub fn peel(map: &CombinatorialMap) -> Result<PeelReport, BoundError> {
    let n = map.real_count() as u64;
    if n < 3 {
        return Err(BoundError::MapTooSmall);
    }
    let m = map.edge_count() as u64;
    let target = 5 * (n - 2);
    let mut caveats = Vec::new();
    if !is_simple(map) {
        caveats.push("map has parallel edges or loops; bounds assume a simple graph".to_string());
    }

    let mut state = PeelState::new(map);
    let mut m5plus = 0u64;
    let mut m4 = 0u64;
    let mut m3 = 0u64;
    let mut stray3 = 0u64;
    let mut partner_origs: Vec<usize> = Vec::new();
    let fallback = m <= target;

    if !fallback {
        while state.map.edge_count() as u64 > target {
            let max = state.max_crossings();
            if max >= 5 {
                let e = state.least_with_crossings(max).expect("max realized");
                state.remove(e);
                m5plus += 1;
            } else if max == 4 {
                let e = state.least_with_crossings(4).expect("max realized");
                state.remove(e);
                m4 += 1;
            } else if max == 3 {
                match pick_config_edge(&state) {
                    Some((e, partners)) => {
                        for p in partners {
                            partner_origs.push(state.origin[p.0 as usize]);
                        }
                        state.remove(e);
                        m3 += 1;
                    }
                    None => {
                        // No full hexagon configuration left; peel the edge
                        // anyway but without partner bookkeeping.
                        if stray3 == 0 {
                            caveats.push(
                                "3-crossing edges outside any full hexagon configuration \
                                 were peeled without partner bookkeeping"
                                    .to_string(),
                            );
                        }
                        let e = state.least_with_crossings(3).expect("max realized");
                        state.remove(e);
                        stray3 += 1;
                    }
                }
            } else {
                caveats.push(format!(
                    "peeling stopped early at {} edges: no edge with 3 or more crossings left",
                    state.map.edge_count()
                ));
                break;
            }
        }

        for orig in std::mem::take(&mut partner_origs) {
            match state.current_id_of(orig) {
                Some(e) => {
                    state.remove(e);
                    partner_origs.push(orig);
                }
                None => caveats.push(
                    "a partner edge of a broken configuration was already removed".to_string(),
                ),
            }
        }
    }
    let pair_removed = partner_origs.len() as u64;

    let mut m3minus = stray3;
    if !fallback {
        while state.max_crossings() >= 3 {
            let max = state.max_crossings();
            let e = state.least_with_crossings(max).expect("max realized");
            state.remove(e);
            m3minus += 1;
        }
    }

    let remaining = state.map.edge_count() as u64;
    let pent = detect(&state.map, ConfigKind::F25);
    let hex = detect(&state.map, ConfigKind::F26);
    let c_pent = pent.len() as u64;
    let c_hex = hex.len() as u64;
    let m0 = pent
        .iter()
        .chain(hex.iter())
        .map(|inst| inst.absent_boundary_pairs().len() as u64)
        .sum();

    let n2 = int_u(n) - int(2);
    let lower_bound_value = int(5) * int_u(m5plus)
        + int(4) * int_u(m4)
        + int(3) * int_u(m3 + pair_removed + m3minus)
        + ratio(7, 3) * int_u(remaining)
        - ratio(25, 3) * &n2;
    if stray3 == 0 && pair_removed == 2 * m3 {
        debug_assert_eq!(m5plus + m4 + 3 * m3 + m3minus + remaining, m);
    }

    let rhs = ratio(2, 3) * &n2 - ratio(4, 3) * int_u(m3) - int_u(m3minus) + int_u(m0);
    let residual_check = ResidualCheck {
        lhs: c_pent + c_hex,
        holds: int_u(c_pent + c_hex) >= rhs,
        rhs,
    };

    Ok(PeelReport {
        n,
        m,
        m5plus,
        m4,
        m3,
        pair_removed,
        m3minus,
        remaining,
        c_pent,
        c_hex,
        m0,
        lower_bound_value,
        fallback,
        conditional: true,
        residual_check,
        caveats,
    })
}

/// Among the current 3-crossing edges, find the lexicographically least one
/// that is the image of a 3-crossing chord of a detected full hexagon
/// configuration, together with the other two chords of its matching.
fn pick_config_edge(state: &PeelState) -> Option<(EdgeId, Vec<EdgeId>)> {
    let instances = detect(&state.map, ConfigKind::F36);
    let mut best: Option<(String, EdgeId, Vec<EdgeId>)> = None;
    for inst in &instances {
        for triple in CHORD_TRIPLES {
            for (i, chord) in triple.into_iter().enumerate() {
                let Some(e) = inst.chord_image(chord) else {
                    continue;
                };
                if state.map.edge(e).crossings.len() != 3 {
                    continue;
                }
                let label = state.map.edge(e).label.clone();
                if best.as_ref().is_some_and(|(l, _, _)| *l <= label) {
                    continue;
                }
                let partners: Vec<EdgeId> = triple
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .filter_map(|(_, c)| inst.chord_image(*c))
                    .collect();
                best = Some((label, e, partners));
            }
        }
    }
    best.map(|(_, e, partners)| (e, partners))
}

/// ceil(r * 10^places) / 10^places, rendered with exactly `places` decimals.
/// Used for displays that must round a bound upward.
pub fn decimal_ceil(r: &Ratio, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = ceil_ratio(&(r * Ratio::from_integer(scale.clone()))).to_integer();
    render_scaled(&scaled, &scale, places)
}

/// Smallest number with `places` decimals whose square is >= `square`.
/// Exact: the candidate root is adjusted by integer comparison, no floats.
pub fn sqrt_decimal_ceil(square: &Ratio, places: u32) -> String {
    debug_assert!(!square.is_negative());
    let scale = BigInt::from(10u32).pow(places);
    let scaled = square * Ratio::from_integer(&scale * &scale);
    let mut d = ceil_ratio(&scaled).to_integer().sqrt();
    while Ratio::from_integer(&d * &d) < scaled {
        d += 1;
    }
    while d.is_positive() && Ratio::from_integer((&d - 1) * (&d - 1)) >= scaled {
        d -= 1;
    }
    render_scaled(&d, &scale, places)
}

fn render_scaled(value: &BigInt, scale: &BigInt, places: u32) -> String {
    let (sign, abs) = (value.is_negative(), value.abs());
    let (whole, frac) = (&abs / scale, &abs % scale);
    format!(
        "{}{}.{:0>width$}",
        if sign { "-" } else { "" },
        whole,
        frac.to_string(),
        width = places as usize
    )
}

impl Serialize for NamedBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("name", &self.name)?;
        map.serialize_entry("value", &fmt_ratio(&self.value))?;
        map.end()
    }
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(6))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("m", &self.m)?;
        map.serialize_entry("bounds", &self.bounds)?;
        map.serialize_entry("best", &fmt_ratio(&self.best))?;
        map.serialize_entry("cubicApplies", &self.cubic_applies)?;
        map.serialize_entry("caveats", &self.caveats)?;
        map.end()
    }
}

impl Serialize for ResidualCheck {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("lhs", &self.lhs)?;
        map.serialize_entry("rhs", &fmt_ratio(&self.rhs))?;
        map.serialize_entry("holds", &self.holds)?;
        map.end()
    }
}

impl Serialize for PeelReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(16))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("m", &self.m)?;
        map.serialize_entry("m5plus", &self.m5plus)?;
        map.serialize_entry("m4", &self.m4)?;
        map.serialize_entry("m3", &self.m3)?;
        map.serialize_entry("pairRemoved", &self.pair_removed)?;
        map.serialize_entry("m3minus", &self.m3minus)?;
        map.serialize_entry("remaining", &self.remaining)?;
        map.serialize_entry("cPent", &self.c_pent)?;
        map.serialize_entry("cHex", &self.c_hex)?;
        map.serialize_entry("m0", &self.m0)?;
        map.serialize_entry("lowerBoundValue", &fmt_ratio(&self.lower_bound_value))?;
        map.serialize_entry("fallback", &self.fallback)?;
        map.serialize_entry("conditional", &self.conditional)?;
        map.serialize_entry("residualCheck", &self.residual_check)?;
        map.serialize_entry("caveats", &self.caveats)?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_bounds_are_the_known_four() {
        let bounds = builtin_linear_bounds();
        let coeffs: Vec<(Ratio, Ratio)> =
            bounds.iter().map(|b| (b.a.clone(), b.b.clone())).collect();
        assert_eq!(
            coeffs,
            vec![
                (int(1), int(3)),
                (ratio(7, 3), ratio(25, 3)),
                (ratio(37, 9), ratio(155, 9)),
                (int(5), ratio(203, 9)),
            ]
        );
    }

    #[test]
    fn lemma_rejects_nonpositive_coefficients() {
        assert_eq!(
            crossing_lemma_from_linear(&int(0), &int(1)),
            Err(BoundError::NonpositiveCoefficient)
        );
        assert_eq!(
            crossing_lemma_from_linear(&int(1), &int(-2)),
            Err(BoundError::NonpositiveCoefficient)
        );
    }

    #[test]
    fn kappa_formula_has_unit_scaling() {
        // c = 1/2 makes the squared slope k itself.
        assert_eq!(kappa_squared(&ratio(1, 2), 1), int(1));
        assert_eq!(kappa_squared(&ratio(1, 2), 4), int(4));
    }

    #[test]
    fn density_classes_all_resolve() {
        for class in DENSITY_CLASSES {
            assert!(density_cap(class).is_ok(), "{class}");
        }
        assert_eq!(
            density_cap("5planar"),
            Err(BoundError::UnknownClass("5planar".to_string()))
        );
    }

    #[test]
    fn rounded_displays_round_up() {
        // 1/c = 41209/1500 = 27.4726..; the reciprocal displays as 27.48.
        assert_eq!(decimal_ceil(&ratio(41209, 1500), 2), "27.48");
        assert_eq!(decimal_ceil(&ratio(203, 30), 2), "6.77");
        assert_eq!(decimal_ceil(&int(5), 2), "5.00");
        // kappa = sqrt(41209/3000) = 3.7063.. displays as 3.71.
        assert_eq!(sqrt_decimal_ceil(&ratio(41209, 3000), 2), "3.71");
        assert_eq!(sqrt_decimal_ceil(&int(9), 2), "3.00");
    }
}
