//! Event-driven maintenance of the Delaunay triangulation and alpha complex
//! of moving points, recording the alpha medusa as it goes.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_traits::{One, Zero};

use crate::certificates::{self as cert, CertKind, LinearMotion};
use crate::error::{Error, Result};
use crate::kernel::{format_decimal, AlgebraicReal, Kernel, KernelOptions, KernelStats, Poly};
use crate::medusa::{Medusa, MedusaBuilder, Origin};
use crate::oracle;
use crate::predicates::Point;
use crate::simplex::{Simplex, VertexId, INFINITE};
use crate::trajectory::TrajectorySet;
use crate::triangulation::{apex, tet_faces, Change, FlipKind, Tds, Tet, Tri};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Squared alpha radius.
    pub alpha2: Rational,
    /// Skip radius certificates whose simplex cannot change state first.
    pub prune_certificates: bool,
    /// Use the product-form triangle certificate instead of the minor form.
    pub degree6_triangle: bool,
    pub kernel: KernelOptions,
    /// Verify structural invariants after every event.
    pub check_invariants: bool,
}

impl Config {
    pub fn new(alpha2: Rational) -> Self {
        Config {
            alpha2,
            prune_certificates: true,
            degree6_triangle: true,
            kernel: KernelOptions::default(),
            check_invariants: true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub flips: u64,
    pub flips_23: u64,
    pub flips_32: u64,
    pub radius_events: u64,
    pub bending_events: u64,
    pub insertions: u64,
    pub deletions: u64,
    pub certificates_built: u64,
    pub flip_certificates_built: u64,
    pub radius_certificates_built: u64,
    pub certificates_filtered: u64,
    pub certificates_without_root: u64,
    pub isolations: u64,
    pub cache_hits: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EventKind {
    Flip,
    Radius,
    Bending,
    Insert,
    Delete,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::Flip => "flip",
            EventKind::Radius => "radius",
            EventKind::Bending => "bending",
            EventKind::Insert => "insert",
            EventKind::Delete => "delete",
        }
    }
}

/// One processed event: what happened, when, and to which vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventRecord {
    pub time: AlgebraicReal,
    pub kind: EventKind,
    pub simplex: Simplex,
}

/// Outcome of comparing the maintained structures against a from-scratch
/// recomputation at one rational time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub time: Rational,
    /// The configuration at this time was degenerate; nothing compared.
    pub skipped: bool,
    pub delaunay_ok: bool,
    pub alpha_ok: bool,
    pub medusa_ok: bool,
}

impl ProbeReport {
    pub fn ok(&self) -> bool {
        self.skipped || (self.delaunay_ok && self.alpha_ok && self.medusa_ok)
    }
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub medusa: Medusa,
    pub counters: Counters,
    pub events: Vec<EventRecord>,
    pub probes: Vec<ProbeReport>,
    pub violations: Vec<String>,
    /// Number of invariant checks performed.
    pub checks: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Flip(Tri),
    Radius(Simplex),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Item {
    time: AlgebraicReal,
    key: Key,
    token: u64,
    multiple: bool,
}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        self.time.cmp(&other.time).then_with(|| self.key.cmp(&other.key)).then_with(|| self.token.cmp(&other.token))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, Default)]
struct Scheduled {
    deletions: Vec<VertexId>,
    bends: Vec<VertexId>,
    insertions: Vec<VertexId>,
}

pub(crate) fn time_label(t: &AlgebraicReal) -> String {
    match t.exact() {
        Some(r) => r.to_string(),
        None => format!("~{}", format_decimal(&t.refine(&Rational::new(1.into(), (1u64 << 50).into())).lo().clone(), 12)),
    }
}

/// The kinetic simulation over one trajectory set.
pub struct Simulation<'a> {
    cfg: Config,
    input: &'a TrajectorySet,
    kernel: Kernel,
    tds: Tds,
    motion: BTreeMap<VertexId, LinearMotion>,
    now: AlgebraicReal,
    short: BTreeMap<Simplex, bool>,
    alpha: BTreeSet<Simplex>,
    flip_certs: BTreeMap<Tri, u64>,
    radius_certs: BTreeMap<Simplex, u64>,
    queue: BinaryHeap<Reverse<Item>>,
    next_token: u64,
    schedule: BTreeMap<Rational, Scheduled>,
    medusa: MedusaBuilder,
    counters: Counters,
    events: Vec<EventRecord>,
    violations: Vec<String>,
    checks: u64,
}

impl<'a> Simulation<'a> {
    /// Builds the triangulation, alpha complex and certificates at time 0.
    pub fn new(input: &'a TrajectorySet, cfg: Config) -> Result<Self> {
        if cfg.alpha2 <= Rational::zero() {
            return Err(Error::InvalidTrajectory("alpha^2 must be positive".into()));
        }
        input.validate()?;
        let zero = Rational::zero();
        let one = Rational::one();
        let mut schedule: BTreeMap<Rational, Scheduled> = BTreeMap::new();
        let mut motion = BTreeMap::new();
        for tr in &input.trajectories {
            if *tr.start() == zero {
                motion.insert(tr.id, tr.motion_at(&zero));
            } else {
                schedule.entry(tr.start().clone()).or_default().insertions.push(tr.id);
            }
            if *tr.end() < one {
                schedule.entry(tr.end().clone()).or_default().deletions.push(tr.id);
            }
            for t in &tr.times[1..tr.times.len() - 1] {
                schedule.entry(t.clone()).or_default().bends.push(tr.id);
            }
        }
        let mut sim = Simulation {
            kernel: Kernel::new(cfg.kernel),
            cfg,
            input,
            tds: Tds::new(),
            motion,
            now: AlgebraicReal::from_rational(zero.clone()),
            short: BTreeMap::new(),
            alpha: BTreeSet::new(),
            flip_certs: BTreeMap::new(),
            radius_certs: BTreeMap::new(),
            queue: BinaryHeap::new(),
            next_token: 0,
            schedule,
            medusa: MedusaBuilder::new(),
            counters: Counters::default(),
            events: Vec::new(),
            violations: Vec::new(),
            checks: 0,
        };
        if input.trajectories.is_empty() {
            return Ok(sim);
        }
        if sim.motion.len() < 4 {
            return Err(Error::DegenerateInput(format!("{} points at time 0, need at least 4", sim.motion.len())));
        }
        sim.kernel.advance_epoch(&sim.next_scheduled_after(&zero));
        let pos = sim.positions(&zero);
        sim.tds = Tds::delaunay(&pos).map_err(|e| with_time(e, "0"))?;
        let t0 = sim.now.clone();
        for &v in sim.motion.keys() {
            sim.medusa.open(Simplex::vertex(v), &t0, Origin::Initial).map_err(Error::Internal)?;
        }
        let all: Vec<Simplex> = sim.tds.simplices().into_iter().collect();
        for s in &all {
            if s.is_finite() {
                let sh = sim.compute_short(s)?;
                sim.short.insert(*s, sh);
            }
        }
        sim.recompute_alpha(all.iter().copied(), Origin::Initial)?;
        let tris: Vec<Tri> = sim.tds.triangles().copied().collect();
        for f in tris {
            sim.build_flip_cert(&f)?;
        }
        sim.reconcile(all.into_iter())?;
        sim.check("initial");
        Ok(sim)
    }

    fn next_scheduled_after(&self, t: &Rational) -> Rational {
        use std::ops::Bound::Excluded;
        self.schedule.range((Excluded(t.clone()), std::ops::Bound::Unbounded)).next().map(|(k, _)| k.clone()).unwrap_or_else(Rational::one)
    }

    fn positions(&self, t: &Rational) -> BTreeMap<VertexId, Point> {
        self.motion.iter().map(|(&v, m)| (v, m.position(t))).collect()
    }

    fn m(&self, v: VertexId) -> &LinearMotion {
        &self.motion[&v]
    }

    fn window(&self, vs: &[VertexId]) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::one();
        for v in vs.iter().filter(|&&v| v != INFINITE) {
            let m = self.m(*v);
            if m.t_lo > lo {
                lo = m.t_lo.clone();
            }
            if m.t_hi < hi {
                hi = m.t_hi.clone();
            }
        }
        (lo, hi)
    }

    fn token(&mut self) -> u64 {
        self.next_token += 1;
        self.next_token
    }

    fn radius_poly(&self, s: &Simplex, deg6: bool) -> Poly {
        let v = s.as_slice();
        let a2 = &self.cfg.alpha2;
        match v.len() {
            2 => cert::radius_certificate_edge(self.m(v[0]), self.m(v[1]), a2),
            3 if deg6 => cert::radius_certificate_triangle(self.m(v[0]), self.m(v[1]), self.m(v[2]), a2),
            3 => cert::radius_certificate_triangle_deg10(self.m(v[0]), self.m(v[1]), self.m(v[2]), a2),
            _ => cert::radius_certificate_tet([self.m(v[0]), self.m(v[1]), self.m(v[2]), self.m(v[3])], a2),
        }
    }

    /// Circumradius at most alpha at the current time.
    fn compute_short(&self, s: &Simplex) -> Result<bool> {
        let p = self.radius_poly(s, true);
        match self.now.sign_of_poly(&p) {
            Ordering::Less => Ok(true),
            Ordering::Greater => Ok(false),
            Ordering::Equal => Err(Error::SimultaneousEvents {
                what: format!("radius of {s} equals alpha during another event"),
                time: time_label(&self.now),
            }),
        }
    }

    /// No vertex of the star of `s` strictly inside its smallest circumball
    /// at the current time.
    fn gabriel(&self, s: &Simplex) -> Result<bool> {
        if s.len() == 4 {
            return Ok(true);
        }
        let mut others = BTreeSet::new();
        for t in self.tds.star(s) {
            others.extend(t.iter().copied().filter(|x| *x != INFINITE && !s.contains(*x)));
        }
        let v = s.as_slice();
        for x in others {
            let g = if v.len() == 2 {
                cert::gabriel_edge(self.m(v[0]), self.m(v[1]), self.m(x))
            } else {
                cert::gabriel_triangle(self.m(v[0]), self.m(v[1]), self.m(v[2]), self.m(x))
            };
            match self.now.sign_of_poly(&g) {
                Ordering::Less => return Ok(false),
                Ordering::Greater => {}
                Ordering::Equal => {
                    return Err(Error::SimultaneousEvents {
                        what: format!("vertex {x} on the circumsphere of {s}"),
                        time: time_label(&self.now),
                    })
                }
            }
        }
        Ok(true)
    }

    fn cofacets(&self, s: &Simplex) -> Vec<Simplex> {
        let mut out = BTreeSet::new();
        for t in self.tds.star(s) {
            for x in t.iter().copied().filter(|x| !s.contains(*x)) {
                out.insert(s.with(x));
            }
        }
        out.into_iter().collect()
    }

    fn is_short(&self, s: &Simplex) -> bool {
        s.is_finite() && self.short.get(s).copied().unwrap_or(false)
    }

    fn member(&self, s: &Simplex) -> Result<bool> {
        if !self.is_short(s) {
            return Ok(false);
        }
        if s.len() == 4 {
            return Ok(true);
        }
        if self.cofacets(s).iter().any(|c| self.alpha.contains(c)) {
            return Ok(true);
        }
        self.gabriel(s)
    }

    fn set_alpha(&mut self, s: Simplex, inside: bool, origin: Origin) -> Result<()> {
        let t = self.now.clone();
        if inside && self.alpha.insert(s) {
            self.medusa.open(s, &t, origin).map_err(Error::Internal)?;
        } else if !inside && self.alpha.remove(&s) {
            self.medusa.close(&s, &t, origin).map_err(Error::Internal)?;
        }
        Ok(())
    }

    /// Re-evaluates alpha membership of the given simplices, higher
    /// dimensions first so that coface information is current.
    fn recompute_alpha(&mut self, set: impl Iterator<Item = Simplex>, origin: Origin) -> Result<()> {
        let mut list: Vec<Simplex> = set.filter(|s| s.is_finite() && s.len() >= 2).collect();
        list.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        list.dedup();
        for s in list {
            if !self.tds.contains_simplex(&s) {
                continue;
            }
            let inside = self.member(&s)?;
            self.set_alpha(s, inside, origin)?;
        }
        Ok(())
    }

    fn five(&self, f: &Tri) -> Simplex {
        let ts = self.tds.face_tets(f);
        Simplex::new(&[f[0], f[1], f[2], apex(&ts[0], f), apex(&ts[1], f)])
    }

    fn build_flip_cert(&mut self, f: &Tri) -> Result<()> {
        let five = self.five(f);
        let finite: Vec<VertexId> = five.as_slice().iter().copied().filter(|&v| v != INFINITE).collect();
        let (kind, poly) = if finite.len() == 5 {
            let m: Vec<&LinearMotion> = finite.iter().map(|&v| self.m(v)).collect();
            (CertKind::Flip5, cert::flip_certificate_5([m[0], m[1], m[2], m[3], m[4]]))
        } else {
            let m: Vec<&LinearMotion> = finite.iter().map(|&v| self.m(v)).collect();
            (CertKind::Flip4, cert::flip_certificate_4([m[0], m[1], m[2], m[3]]))
        };
        self.counters.certificates_built += 1;
        self.counters.flip_certificates_built += 1;
        let token = self.token();
        self.flip_certs.insert(*f, token);
        self.schedule_root(kind, &poly, &finite, Key::Flip(*f), token)
    }

    fn build_radius_cert(&mut self, s: &Simplex) -> Result<()> {
        let kind = match s.len() {
            2 => CertKind::RadiusEdge,
            3 => CertKind::RadiusTriangle,
            _ => CertKind::RadiusTet,
        };
        let poly = self.radius_poly(s, self.cfg.degree6_triangle);
        self.counters.certificates_built += 1;
        self.counters.radius_certificates_built += 1;
        let token = self.token();
        self.radius_certs.insert(*s, token);
        self.schedule_root(kind, &poly, s.as_slice(), Key::Radius(*s), token)
    }

    fn schedule_root(&mut self, kind: CertKind, poly: &Poly, vs: &[VertexId], key: Key, token: u64) -> Result<()> {
        if poly.is_zero() {
            return Err(Error::ZeroCertificate { kind: kind.name(), vertices: vs.to_vec() });
        }
        let (lo, hi) = self.window(vs);
        if let Some(r) = self.kernel.next_root(poly, &self.now, &lo, &hi)? {
            self.queue.push(Reverse(Item { time: r.time, key, token, multiple: r.multiple }));
        }
        Ok(())
    }

    /// Whether `s` must carry a radius certificate.
    fn needs_radius_cert(&self, s: &Simplex) -> bool {
        if !self.cfg.prune_certificates {
            return true;
        }
        if self.is_short(s) {
            !self.cofacets(s).iter().any(|c| self.is_short(c))
        } else {
            s.len() == 2 || !s.facets().iter().any(|f| !self.is_short(f))
        }
    }

    /// Adds missing and drops superfluous radius certificates.
    fn reconcile(&mut self, set: impl Iterator<Item = Simplex>) -> Result<()> {
        let mut list: Vec<Simplex> = set.filter(|s| s.is_finite() && s.len() >= 2).collect();
        list.sort();
        list.dedup();
        for s in list {
            if !self.tds.contains_simplex(&s) {
                self.radius_certs.remove(&s);
                continue;
            }
            let need = self.needs_radius_cert(&s);
            let has = self.radius_certs.contains_key(&s);
            if need && !has {
                self.build_radius_cert(&s)?;
            } else if !need && has {
                self.radius_certs.remove(&s);
            }
        }
        Ok(())
    }

    /// Applies a change of tetrahedra and updates everything attached to
    /// the simplices that disappear or appear. Returns the created simplices.
    fn apply_change(&mut self, change: &Change, origin: Origin) -> Result<Vec<Simplex>> {
        let mut before = BTreeSet::new();
        for t in &change.removed {
            before.extend(Simplex::new(t).closure());
        }
        let mut after = BTreeSet::new();
        for t in &change.added {
            after.extend(Simplex::new(t).closure());
        }
        let existed: BTreeSet<Simplex> = after.iter().filter(|s| self.tds.contains_simplex(s)).copied().collect();
        self.tds.apply(change);
        for s in &before {
            if self.tds.contains_simplex(s) {
                continue;
            }
            self.set_alpha(*s, false, origin)?;
            self.short.remove(s);
            self.radius_certs.remove(s);
            if s.len() == 3 {
                let v = s.as_slice();
                self.flip_certs.remove(&[v[0], v[1], v[2]]);
            }
        }
        let created: Vec<Simplex> = after.difference(&existed).copied().collect();
        for s in &created {
            if s.is_finite() {
                let sh = self.compute_short(s)?;
                self.short.insert(*s, sh);
            }
        }
        Ok(created)
    }

    fn refresh_flip_certs(&mut self, tets: &[Tet]) -> Result<()> {
        let mut tris = BTreeSet::new();
        for t in tets {
            tris.extend(tet_faces(t));
        }
        for f in tris {
            self.build_flip_cert(&f)?;
        }
        Ok(())
    }

    fn closure_of(tets: &[Tet]) -> BTreeSet<Simplex> {
        let mut out = BTreeSet::new();
        for t in tets {
            out.extend(Simplex::new(t).closure());
        }
        out
    }

    fn handle_flip(&mut self, f: Tri) -> Result<()> {
        let five = self.five(&f);
        let (kind, change) = self.tds.flip(&f).map_err(|e| with_time(e, &time_label(&self.now)))?;
        let all_short = change.removed.iter().all(|t| self.is_short(&Simplex::new(t)));
        let created = self.apply_change(&change, Origin::Flip)?;
        if all_short {
            for s in created.iter().filter(|s| s.is_finite() && s.len() >= 2) {
                self.set_alpha(*s, true, Origin::Flip)?;
            }
            let t = self.now.clone();
            self.medusa.instant(five, &t, Origin::FlipFill);
        } else {
            self.recompute_alpha(created.iter().copied(), Origin::Flip)?;
        }
        self.refresh_flip_certs(&change.added)?;
        self.reconcile(Self::closure_of(&change.added).into_iter())?;
        self.counters.flips += 1;
        match kind {
            FlipKind::TwoThree => self.counters.flips_23 += 1,
            FlipKind::ThreeTwo => self.counters.flips_32 += 1,
        }
        Ok(())
    }

    fn handle_radius(&mut self, s: Simplex) -> Result<()> {
        let was_short = self.is_short(&s);
        self.short.insert(s, !was_short);
        if !was_short {
            if s.len() == 4 || self.gabriel(&s)? {
                for face in s.closure() {
                    self.set_alpha(face, true, Origin::Radius)?;
                }
            }
        } else if self.alpha.contains(&s) {
            self.set_alpha(s, false, Origin::Radius)?;
            let mut faces: Vec<Simplex> = s.closure().into_iter().filter(|f| *f != s).collect();
            faces.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
            for face in faces {
                if self.alpha.contains(&face) && !self.member(&face)? {
                    self.set_alpha(face, false, Origin::Radius)?;
                }
            }
        }
        self.radius_certs.remove(&s);
        let mut near = vec![s];
        near.extend(s.facets());
        near.extend(self.cofacets(&s));
        self.reconcile(near.into_iter())?;
        self.counters.radius_events += 1;
        Ok(())
    }

    fn handle_insert(&mut self, v: VertexId, t: &Rational) -> Result<()> {
        let tr = self.input.by_id(v).ok_or(Error::NoSuchVertex(v))?;
        self.motion.insert(v, tr.motion_at(t));
        let pos = self.positions(t);
        let change = self.tds.insertion(v, &pos).map_err(|e| with_time(e, &t.to_string()))?;
        let before = self.alpha.clone();
        let created = self.apply_change(&change, Origin::Insert)?;
        self.medusa.open(Simplex::vertex(v), &self.now, Origin::Insert).map_err(Error::Internal)?;
        let region = Self::closure_of(&change.added);
        let _ = created;
        self.recompute_alpha(region.iter().copied(), Origin::Insert)?;
        let now = self.now.clone();
        for s in before.difference(&self.alpha) {
            self.medusa.instant(s.with(v), &now, Origin::InsertFill);
        }
        self.refresh_flip_certs(&change.added)?;
        self.reconcile(region.into_iter())?;
        self.counters.insertions += 1;
        Ok(())
    }

    fn handle_delete(&mut self, v: VertexId, t: &Rational) -> Result<()> {
        let pos = self.positions(t);
        let change = self.tds.removal(v, &pos).map_err(|e| with_time(e, &t.to_string()))?;
        let before = self.alpha.clone();
        self.apply_change(&change, Origin::Delete)?;
        let now = self.now.clone();
        self.medusa.close(&Simplex::vertex(v), &now, Origin::Delete).map_err(Error::Internal)?;
        self.motion.remove(&v);
        let region = Self::closure_of(&change.added);
        self.recompute_alpha(region.iter().copied(), Origin::Delete)?;
        for s in self.alpha.difference(&before) {
            self.medusa.instant(s.with(v), &now, Origin::DeleteFill);
        }
        self.refresh_flip_certs(&change.added)?;
        self.reconcile(region.into_iter())?;
        self.counters.deletions += 1;
        Ok(())
    }

    fn handle_bends(&mut self, vs: &[VertexId], t: &Rational) -> Result<()> {
        let bent: BTreeSet<VertexId> = vs.iter().copied().filter(|v| self.motion.contains_key(v)).collect();
        for &v in &bent {
            let tr = self.input.by_id(v).ok_or(Error::NoSuchVertex(v))?;
            self.motion.insert(v, tr.motion_at(t));
        }
        let tris: Vec<Tri> = self
            .flip_certs
            .keys()
            .filter(|f| self.five(f).as_slice().iter().any(|x| bent.contains(x)))
            .copied()
            .collect();
        for f in tris {
            self.build_flip_cert(&f)?;
        }
        let radius: Vec<Simplex> =
            self.radius_certs.keys().filter(|s| s.as_slice().iter().any(|x| bent.contains(x))).copied().collect();
        for s in radius {
            self.build_radius_cert(&s)?;
        }
        self.counters.bending_events += bent.len() as u64;
        Ok(())
    }

    fn is_current(&self, item: &Item) -> bool {
        match &item.key {
            Key::Flip(f) => self.flip_certs.get(f) == Some(&item.token),
            Key::Radius(s) => self.radius_certs.get(s) == Some(&item.token),
        }
    }

    fn peek_valid(&mut self) -> Option<Item> {
        while let Some(Reverse(top)) = self.queue.peek() {
            if self.is_current(top) {
                break;
            }
            self.queue.pop();
        }
        self.queue.peek().map(|Reverse(i)| i.clone())
    }

    fn identity(&self, key: &Key) -> Simplex {
        match key {
            Key::Flip(f) => self.five(f),
            Key::Radius(s) => *s,
        }
    }

    fn process_certificate_event(&mut self) -> Result<()> {
        let Reverse(first) = self.queue.pop().expect("event present");
        let id = self.identity(&first.key);
        while let Some(next) = self.peek_valid() {
            if next.time != first.time {
                break;
            }
            let other = self.identity(&next.key);
            if other != id {
                return Err(Error::SimultaneousEvents {
                    what: format!("{id} and {other}"),
                    time: time_label(&first.time),
                });
            }
            self.queue.pop();
        }
        if self.now >= first.time && !self.events.is_empty() {
            return Err(Error::Internal(format!("event time did not increase at {}", time_label(&first.time))));
        }
        self.now = first.time.clone();
        let kind = match first.key {
            Key::Flip(_) => EventKind::Flip,
            Key::Radius(_) => EventKind::Radius,
        };
        if first.multiple {
            let name = if kind == EventKind::Flip { "flip" } else { "radius" };
            return Err(Error::TangentialEvent {
                kind: name,
                vertices: id.as_slice().to_vec(),
                time: time_label(&first.time),
            });
        }
        self.events.push(EventRecord { time: first.time.clone(), kind, simplex: id });
        match first.key {
            Key::Flip(f) => self.handle_flip(f)?,
            Key::Radius(s) => self.handle_radius(s)?,
        }
        self.check(kind.name());
        Ok(())
    }

    fn process_scheduled(&mut self, t: &Rational) -> Result<()> {
        let s = self.schedule.get(t).cloned().unwrap_or_default();
        self.now = AlgebraicReal::from_rational(t.clone());
        self.kernel.advance_epoch(&self.next_scheduled_after(t));
        let at = AlgebraicReal::from_rational(t.clone());
        for &v in &s.deletions {
            self.events.push(EventRecord { time: at.clone(), kind: EventKind::Delete, simplex: Simplex::vertex(v) });
            self.handle_delete(v, t)?;
            self.check("delete");
        }
        if !s.bends.is_empty() {
            let mut bends = s.bends.clone();
            bends.sort_unstable();
            for &v in &bends {
                self.events.push(EventRecord { time: at.clone(), kind: EventKind::Bending, simplex: Simplex::vertex(v) });
            }
            self.handle_bends(&bends, t)?;
            self.check("bend");
        }
        for &v in &s.insertions {
            self.events.push(EventRecord { time: at.clone(), kind: EventKind::Insert, simplex: Simplex::vertex(v) });
            self.handle_insert(v, t)?;
            self.check("insert");
        }
        Ok(())
    }

    /// Runs to time 1, comparing against recomputation at each probe time.
    pub fn run(mut self, probes: &[Rational]) -> Result<RunOutput> {
        let one = Rational::one();
        let mut probes: Vec<Rational> = probes.iter().filter(|p| **p > Rational::zero() && **p < one).cloned().collect();
        probes.sort();
        probes.dedup();
        let mut probes = probes.into_iter().peekable();
        let mut reports = Vec::new();
        if self.input.trajectories.is_empty() {
            let medusa = self.medusa.finish(&AlgebraicReal::from_rational(one));
            return Ok(RunOutput {
                medusa,
                counters: self.counters,
                events: self.events,
                probes: reports,
                violations: self.violations,
                checks: self.checks,
            });
        }
        let mut sched: Vec<Rational> = self.schedule.keys().cloned().collect();
        sched.push(one.clone());
        let mut sched = sched.into_iter().peekable();
        loop {
            let next_sched = sched.peek().cloned().expect("end time present");
            let cert_first = match self.peek_valid() {
                Some(item) => match item.time.cmp_rational(&next_sched) {
                    Ordering::Less => Some(item.time.clone()),
                    Ordering::Equal => {
                        let what = format!("certificate on {} at a scheduled time", self.identity(&item.key));
                        return Err(Error::SimultaneousEvents { what, time: next_sched.to_string() });
                    }
                    Ordering::Greater => None,
                },
                None => None,
            };
            let horizon = cert_first.clone().unwrap_or_else(|| AlgebraicReal::from_rational(next_sched.clone()));
            while let Some(p) = probes.peek() {
                match horizon.cmp_rational(p) {
                    Ordering::Greater => {
                        let p = probes.next().unwrap();
                        reports.push(self.probe(&p));
                    }
                    Ordering::Equal => {
                        probes.next();
                    }
                    Ordering::Less => break,
                }
            }
            if cert_first.is_some() {
                self.process_certificate_event()?;
                continue;
            }
            let t = sched.next().unwrap();
            if t == one {
                break;
            }
            self.process_scheduled(&t)?;
        }
        self.merge_kernel_stats();
        let end = AlgebraicReal::from_rational(one);
        let medusa = self.medusa.finish(&end);
        Ok(RunOutput {
            medusa,
            counters: self.counters,
            events: self.events,
            probes: reports,
            violations: self.violations,
            checks: self.checks,
        })
    }

    fn merge_kernel_stats(&mut self) {
        let k: KernelStats = self.kernel.stats();
        self.counters.certificates_filtered = k.filtered;
        self.counters.certificates_without_root = k.no_root;
        self.counters.isolations = k.isolations;
        self.counters.cache_hits = k.cache_hits;
    }

    /// Compares the maintained state with recomputation at rational time `t`.
    pub fn probe(&self, t: &Rational) -> ProbeReport {
        let pos = self.positions(t);
        let Ok(reference) = oracle::static_complex(&pos, &self.cfg.alpha2) else {
            return ProbeReport { time: t.clone(), skipped: true, delaunay_ok: true, alpha_ok: true, medusa_ok: true };
        };
        let tets: BTreeSet<Simplex> = self.tds.tets().iter().map(|t| Simplex::new(t)).collect();
        let active: BTreeSet<Simplex> = self.medusa.active().keys().filter(|s| s.len() >= 2).copied().collect();
        let vertices_ok =
            self.medusa.active().keys().filter(|s| s.len() == 1).map(|s| s.as_slice()[0]).eq(self.motion.keys().copied());
        ProbeReport {
            time: t.clone(),
            skipped: false,
            delaunay_ok: tets == reference.tets,
            alpha_ok: self.alpha == reference.alpha,
            medusa_ok: vertices_ok && active == reference.alpha,
        }
    }

    fn check(&mut self, after: &str) {
        if !self.cfg.check_invariants {
            return;
        }
        self.checks += 1;
        let mut problems = Vec::new();
        if let Err(e) = self.tds.validate() {
            problems.push(e);
        }
        for s in &self.alpha {
            if !self.is_short(s) {
                problems.push(format!("{s} in alpha but not short"));
            }
            for f in s.closure() {
                if !self.alpha.contains(&f) {
                    problems.push(format!("face {f} of {s} missing from alpha"));
                }
            }
        }
        for (s, &sh) in &self.short {
            if s.len() == 4 && sh != self.alpha.contains(s) {
                problems.push(format!("tetrahedron {s} short={sh} but alpha disagrees"));
            }
            if self.needs_radius_cert(s) && !self.radius_certs.contains_key(s) {
                problems.push(format!("{s} lacks a radius certificate"));
            }
        }
        if self.flip_certs.len() != self.tds.triangles().count() {
            problems.push("flip certificates do not cover the triangles".into());
        }
        let mut expected: BTreeSet<Simplex> = self.alpha.clone();
        expected.extend(self.motion.keys().map(|&v| Simplex::vertex(v)));
        let active: BTreeSet<Simplex> = self.medusa.active().keys().copied().collect();
        if active != expected {
            problems.push("active medusa cells differ from the alpha complex".into());
        }
        for p in problems {
            self.violations.push(format!("after {after} at {}: {p}", time_label(&self.now)));
        }
    }

    pub fn tds(&self) -> &Tds {
        &self.tds
    }

    pub fn alpha(&self) -> &BTreeSet<Simplex> {
        &self.alpha
    }

    pub fn now(&self) -> &AlgebraicReal {
        &self.now
    }

    /// Number of radius certificates currently held, by simplex dimension.
    pub fn radius_certificate_dims(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for s in self.radius_certs.keys() {
            out[s.dim() - 1] += 1;
        }
        out
    }
}

fn with_time(e: Error, t: &str) -> Error {
    match e {
        Error::DuplicatePoint(a, b, _) => Error::DuplicatePoint(a, b, t.to_string()),
        Error::UnflippableEvent { vertices, .. } => Error::UnflippableEvent { vertices, time: t.to_string() },
        e => e,
    }
}
