//! Combinatorial Delaunay tetrahedralization closed off by a vertex at
//! infinity, plus the static construction steps (insertion, vertex removal,
//! bistellar flips).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::predicates::{in_sphere, orientation, Point};
use crate::simplex::{Simplex, VertexId, INFINITE};

pub type Tet = [VertexId; 4];
pub type Tri = [VertexId; 3];

pub fn tet(mut v: [VertexId; 4]) -> Tet {
    v.sort_unstable();
    v
}

pub fn tri(mut v: [VertexId; 3]) -> Tri {
    v.sort_unstable();
    v
}

pub fn tet_faces(t: &Tet) -> [Tri; 4] {
    [[t[1], t[2], t[3]], [t[0], t[2], t[3]], [t[0], t[1], t[3]], [t[0], t[1], t[2]]]
}

/// The vertex of `t` not on `f`.
pub fn apex(t: &Tet, f: &Tri) -> VertexId {
    *t.iter().find(|v| !f.contains(v)).expect("face not in tetrahedron")
}

/// Tetrahedra with face and vertex incidence.
#[derive(Clone, Debug, Default)]
pub struct Tds {
    tets: BTreeSet<Tet>,
    faces: BTreeMap<Tri, Vec<Tet>>,
    stars: BTreeMap<VertexId, BTreeSet<Tet>>,
}

impl PartialEq for Tds {
    fn eq(&self, other: &Self) -> bool {
        self.tets == other.tets
    }
}

impl Eq for Tds {}

/// Tetrahedra removed and added by one modification.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Change {
    pub removed: Vec<Tet>,
    pub added: Vec<Tet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipKind {
    TwoThree,
    ThreeTwo,
}

impl Tds {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }

    pub fn tets(&self) -> &BTreeSet<Tet> {
        &self.tets
    }

    pub fn contains_tet(&self, t: &Tet) -> bool {
        self.tets.contains(t)
    }

    pub fn triangles(&self) -> impl Iterator<Item = &Tri> {
        self.faces.keys()
    }

    pub fn face_tets(&self, f: &Tri) -> &[Tet] {
        self.faces.get(f).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn vertex_tets(&self, v: VertexId) -> impl Iterator<Item = &Tet> {
        self.stars.get(&v).into_iter().flatten()
    }

    /// Finite vertices in the triangulation.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.stars.keys().copied().filter(|&v| v != INFINITE)
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.stars.contains_key(&v)
    }

    /// Tetrahedra containing every vertex of `s`.
    pub fn star(&self, s: &Simplex) -> Vec<Tet> {
        let ids = s.as_slice();
        let Some(first) = self.stars.get(&ids[0]) else {
            return Vec::new();
        };
        first.iter().filter(|t| ids.iter().all(|v| t.contains(v))).copied().collect()
    }

    pub fn contains_simplex(&self, s: &Simplex) -> bool {
        match s.len() {
            1 => self.stars.contains_key(&s.as_slice()[0]),
            3 => {
                let v = s.as_slice();
                self.faces.contains_key(&[v[0], v[1], v[2]])
            }
            4 => {
                let v = s.as_slice();
                self.tets.contains(&[v[0], v[1], v[2], v[3]])
            }
            _ => !self.star(s).is_empty(),
        }
    }

    /// Edges, triangles and tetrahedra, including infinite ones.
    pub fn simplices(&self) -> BTreeSet<Simplex> {
        let mut out = BTreeSet::new();
        for t in &self.tets {
            out.extend(Simplex::new(t).closure());
        }
        out
    }

    fn add(&mut self, t: Tet) {
        debug_assert!(t.windows(2).all(|w| w[0] < w[1]));
        if !self.tets.insert(t) {
            return;
        }
        for f in tet_faces(&t) {
            self.faces.entry(f).or_default().push(t);
        }
        for v in t {
            self.stars.entry(v).or_default().insert(t);
        }
    }

    fn remove(&mut self, t: &Tet) {
        if !self.tets.remove(t) {
            return;
        }
        for f in tet_faces(t) {
            let list = self.faces.get_mut(&f).expect("face index");
            list.retain(|x| x != t);
            if list.is_empty() {
                self.faces.remove(&f);
            }
        }
        for v in t {
            let s = self.stars.get_mut(v).expect("vertex index");
            s.remove(t);
            if s.is_empty() {
                self.stars.remove(v);
            }
        }
    }

    /// Replaces `removed` by `added`.
    pub fn apply(&mut self, change: &Change) {
        for t in &change.removed {
            self.remove(t);
        }
        for t in &change.added {
            self.add(*t);
        }
    }

    /// The other tetrahedron across `f`.
    pub fn neighbor(&self, t: &Tet, f: &Tri) -> Option<Tet> {
        self.face_tets(f).iter().find(|x| *x != t).copied()
    }

    /// Checks that the tetrahedra close up into a 3-sphere: every triangle
    /// has two tetrahedra and every vertex link is a connected 2-sphere.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.tets.is_empty() {
            return Ok(());
        }
        for (f, ts) in &self.faces {
            if ts.len() != 2 {
                return Err(format!("triangle {} has {} tetrahedra", Simplex::new(f), ts.len()));
            }
        }
        for (&v, star) in &self.stars {
            let link: Vec<Tri> = star
                .iter()
                .map(|t| {
                    let r: Vec<_> = t.iter().copied().filter(|&x| x != v).collect();
                    [r[0], r[1], r[2]]
                })
                .collect();
            let mut edges: BTreeMap<[VertexId; 2], usize> = BTreeMap::new();
            let mut verts = BTreeSet::new();
            for t in &link {
                verts.extend(t.iter().copied());
                for e in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
                    *edges.entry(e).or_default() += 1;
                }
            }
            if edges.values().any(|&c| c != 2) {
                return Err(format!("link of {v} is not a closed surface"));
            }
            let euler = verts.len() as i64 - edges.len() as i64 + link.len() as i64;
            if euler != 2 {
                return Err(format!("link of {v} has Euler characteristic {euler}"));
            }
            // connectivity of the link through shared edges
            let mut seen = BTreeSet::new();
            let mut stack = vec![link[0]];
            while let Some(t) = stack.pop() {
                if !seen.insert(t) {
                    continue;
                }
                for u in &link {
                    if !seen.contains(u) && u.iter().filter(|x| t.contains(x)).count() == 2 {
                        stack.push(*u);
                    }
                }
            }
            if seen.len() != link.len() {
                return Err(format!("link of {v} is disconnected"));
            }
        }
        Ok(())
    }

    /// Local Delaunay check over every internal triangle.
    pub fn check_delaunay(&self, pos: &BTreeMap<VertexId, Point>) -> std::result::Result<(), String> {
        for (f, ts) in &self.faces {
            for (t, other) in [(&ts[0], &ts[1]), (&ts[1], &ts[0])] {
                let x = apex(other, f);
                if x == INFINITE {
                    continue;
                }
                if conflict(self, t, x, pos).map_err(|e| e.to_string())? {
                    return Err(format!("triangle {} is not locally Delaunay", Simplex::new(f)));
                }
            }
        }
        Ok(())
    }

    /// Delaunay tetrahedralization of the given points by incremental
    /// insertion in id order.
    pub fn delaunay(pos: &BTreeMap<VertexId, Point>) -> Result<Tds> {
        check_distinct(pos)?;
        let ids: Vec<VertexId> = pos.keys().copied().collect();
        if ids.len() < 4 {
            return Err(Error::DegenerateInput(format!("{} points cannot span a tetrahedron", ids.len())));
        }
        let seed = initial_tet(&ids, pos)?;
        let mut tds = Tds::new();
        let [a, b, c, d] = seed;
        tds.add(tet(seed));
        for f in [[a, b, c], [a, b, d], [a, c, d], [b, c, d]] {
            tds.add(tet([f[0], f[1], f[2], INFINITE]));
        }
        for &v in &ids {
            if !seed.contains(&v) {
                let change = tds.insertion(v, pos)?;
                tds.apply(&change);
            }
        }
        Ok(tds)
    }

    /// Tetrahedra in conflict with `v`, and the star that replaces them.
    pub fn insertion(&self, v: VertexId, pos: &BTreeMap<VertexId, Point>) -> Result<Change> {
        if self.has_vertex(v) {
            return Err(Error::Internal(format!("vertex {v} inserted twice")));
        }
        let p = &pos[&v];
        for u in self.vertices() {
            if &pos[&u] == p {
                return Err(Error::DuplicatePoint(u.min(v), u.max(v), String::new()));
            }
        }
        let mut region = BTreeSet::new();
        for t in &self.tets {
            if conflict(self, t, v, pos)? {
                region.insert(*t);
            }
        }
        if region.is_empty() {
            return Err(Error::Internal(format!("empty conflict region for {v}")));
        }
        let mut added = Vec::new();
        for t in &region {
            for f in tet_faces(t) {
                let n = self.neighbor(t, &f).expect("closed triangulation");
                if !region.contains(&n) {
                    let nt = tet([f[0], f[1], f[2], v]);
                    if !f.contains(&INFINITE)
                        && orientation(&pos[&f[0]], &pos[&f[1]], &pos[&f[2]], p) == Ordering::Equal
                    {
                        return Err(Error::DegenerateInput(format!(
                            "point {v} is coplanar with triangle {}",
                            Simplex::new(&f)
                        )));
                    }
                    added.push(nt);
                }
            }
        }
        Ok(Change { removed: region.into_iter().collect(), added })
    }

    /// Removes `v` and fills the hole with the Delaunay tetrahedra of its link.
    pub fn removal(&self, v: VertexId, pos: &BTreeMap<VertexId, Point>) -> Result<Change> {
        let star: Vec<Tet> = self.vertex_tets(v).copied().collect();
        if star.is_empty() || v == INFINITE {
            return Err(Error::NoSuchVertex(v));
        }
        if self.vertices().count() <= 4 {
            return Err(Error::DegenerateInput("fewer than four points would remain".into()));
        }
        let link_tris: BTreeSet<Tri> = star
            .iter()
            .map(|t| {
                let r: Vec<_> = t.iter().copied().filter(|&x| x != v).collect();
                [r[0], r[1], r[2]]
            })
            .collect();
        let link: BTreeSet<VertexId> = link_tris.iter().flatten().copied().collect();
        let finite: Vec<VertexId> = link.iter().copied().filter(|&x| x != INFINITE).collect();
        let fill: Vec<Tet> = if link.contains(&INFINITE) && finite.len() == 3 {
            vec![tet([finite[0], finite[1], finite[2], INFINITE])]
        } else {
            let sub: BTreeMap<VertexId, Point> = finite.iter().map(|&x| (x, pos[&x].clone())).collect();
            let local = Tds::delaunay(&sub).map_err(|e| match e {
                Error::DegenerateInput(m) => Error::DegenerateInput(format!("link of {v}: {m}")),
                e => e,
            })?;
            let mut with_v = sub;
            with_v.insert(v, pos[&v].clone());
            let mut fill = Vec::new();
            for t in local.tets() {
                if conflict(&local, t, v, &with_v)? {
                    fill.push(*t);
                }
            }
            fill
        };
        // the fill must close exactly the hole left by the star
        let mut boundary: BTreeMap<Tri, usize> = BTreeMap::new();
        for t in &fill {
            for f in tet_faces(t) {
                *boundary.entry(f).or_default() += 1;
            }
        }
        let outer: BTreeSet<Tri> = boundary.into_iter().filter(|(_, c)| *c == 1).map(|(f, _)| f).collect();
        if outer != link_tris {
            return Err(Error::Internal(format!("retriangulation of the hole of {v} does not match its link")));
        }
        Ok(Change { removed: star, added: fill })
    }

    /// Exchanges the configuration around triangle `f`. Three tetrahedra
    /// around an edge of `f` whose link is the two apexes plus the opposite
    /// vertex become two; otherwise the two tetrahedra on `f` become three.
    pub fn flip(&self, f: &Tri) -> Result<(FlipKind, Change)> {
        let ts = self.face_tets(f);
        if ts.len() != 2 {
            return Err(Error::Internal(format!("flip on missing triangle {}", Simplex::new(f))));
        }
        let (a, b) = (apex(&ts[0], f), apex(&ts[1], f));
        for (i, &w) in f.iter().enumerate() {
            let e: Vec<VertexId> = f.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            let around = self.star(&Simplex::new(&e));
            if around.len() != 3 {
                continue;
            }
            let want: BTreeSet<Tet> =
                [tet([e[0], e[1], w, a]), tet([e[0], e[1], w, b]), tet([e[0], e[1], a, b])].into();
            let have: BTreeSet<Tet> = around.iter().copied().collect();
            if want == have {
                let added = vec![tet([w, a, b, e[0]]), tet([w, a, b, e[1]])];
                return Ok((FlipKind::ThreeTwo, Change { removed: around, added }));
            }
        }
        let mut vs: Vec<VertexId> = f.to_vec();
        vs.extend([a, b]);
        if !self.star(&Simplex::new(&[a, b])).is_empty() {
            return Err(Error::UnflippableEvent { vertices: Simplex::new(&vs).as_slice().to_vec(), time: String::new() });
        }
        let added = vec![tet([f[0], f[1], a, b]), tet([f[0], f[2], a, b]), tet([f[1], f[2], a, b])];
        Ok((FlipKind::TwoThree, Change { removed: ts.to_vec(), added }))
    }
}

/// Whether inserting `v` would destroy `t`: inside the circumsphere of a
/// finite tetrahedron, or beyond the hull facet of an infinite one.
fn conflict(tds: &Tds, t: &Tet, v: VertexId, pos: &BTreeMap<VertexId, Point>) -> Result<bool> {
    let p = &pos[&v];
    if t[3] == INFINITE {
        let f = [t[0], t[1], t[2]];
        let inner = tds.neighbor(t, &f).map(|n| apex(&n, &f)).expect("closed triangulation");
        let (a, b, c) = (&pos[&f[0]], &pos[&f[1]], &pos[&f[2]]);
        let side = orientation(a, b, c, p);
        if side == Ordering::Equal {
            return Err(Error::DegenerateInput(format!(
                "point {v} is coplanar with hull facet {}",
                Simplex::new(&f)
            )));
        }
        if inner == INFINITE {
            return Err(Error::Internal("two infinite tetrahedra share a facet".into()));
        }
        Ok(side == orientation(a, b, c, &pos[&inner]).reverse())
    } else {
        let s = in_sphere(&pos[&t[0]], &pos[&t[1]], &pos[&t[2]], &pos[&t[3]], p)?;
        if s == Ordering::Equal {
            let mut vs = t.to_vec();
            vs.push(v);
            return Err(Error::DegenerateInput(format!("points {vs:?} are co-spherical")));
        }
        Ok(s == Ordering::Greater)
    }
}

fn check_distinct(pos: &BTreeMap<VertexId, Point>) -> Result<()> {
    let mut seen: BTreeMap<&Point, VertexId> = BTreeMap::new();
    for (&v, p) in pos {
        if let Some(&u) = seen.get(p) {
            return Err(Error::DuplicatePoint(u, v, String::new()));
        }
        seen.insert(p, v);
    }
    Ok(())
}

/// First affinely independent quadruple in id order, positively oriented.
fn initial_tet(ids: &[VertexId], pos: &BTreeMap<VertexId, Point>) -> Result<[VertexId; 4]> {
    let a = ids[0];
    let b = ids[1];
    let pa = &pos[&a];
    let pb = &pos[&b];
    let collinear = |p: &Point| {
        let n = crate::predicates::cross(&crate::predicates::vsub(pb, pa), &crate::predicates::vsub(p, pa));
        n.iter().all(num_traits::Zero::is_zero)
    };
    let c = ids[2..]
        .iter()
        .copied()
        .find(|x| !collinear(&pos[x]))
        .ok_or_else(|| Error::DegenerateInput("all points are collinear".into()))?;
    let pc = &pos[&c];
    let d = ids[2..]
        .iter()
        .copied()
        .find(|x| orientation(pa, pb, pc, &pos[x]) != Ordering::Equal)
        .ok_or_else(|| Error::DegenerateInput("all points are coplanar".into()))?;
    Ok([a, b, c, d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn p(x: i64, y: i64, z: i64) -> Point {
        [x, y, z].map(|c| Rational::from_integer(c.into()))
    }

    fn points(list: &[Point]) -> BTreeMap<VertexId, Point> {
        list.iter().cloned().enumerate().map(|(i, x)| (i as VertexId, x)).collect()
    }

    #[test]
    fn single_tetrahedron() {
        let pos = points(&[p(0, 0, 0), p(4, 0, 0), p(0, 4, 0), p(0, 0, 4)]);
        let tds = Tds::delaunay(&pos).unwrap();
        assert_eq!(tds.tets().len(), 5);
        assert_eq!(tds.tets().iter().filter(|t| t[3] != INFINITE).count(), 1);
        tds.validate().unwrap();
    }

    #[test]
    fn centroid_insertion_splits_in_four() {
        let mut pos = points(&[p(0, 0, 0), p(4, 0, 0), p(0, 4, 0), p(0, 0, 4)]);
        let mut tds = Tds::delaunay(&pos).unwrap();
        pos.insert(4, p(1, 1, 1));
        let ch = tds.insertion(4, &pos).unwrap();
        assert_eq!(ch.removed, vec![[0, 1, 2, 3]]);
        assert_eq!(ch.added.len(), 4);
        tds.apply(&ch);
        tds.validate().unwrap();
        tds.check_delaunay(&pos).unwrap();
    }

    #[test]
    fn far_insertion_touches_only_infinite_cells() {
        let mut pos = points(&[p(0, 0, 0), p(4, 0, 0), p(0, 4, 0), p(0, 0, 4)]);
        let tds = Tds::delaunay(&pos).unwrap();
        pos.insert(4, p(-100, -100, -100));
        let ch = tds.insertion(4, &pos).unwrap();
        assert!(ch.removed.iter().all(|t| t[3] == INFINITE));
    }

    #[test]
    fn removal_restores_previous() {
        let base = [p(0, 0, 0), p(10, 1, 0), p(1, 10, 2), p(0, 1, 11), p(9, 9, 8), p(-3, 5, 4)];
        let pos = points(&base);
        let without: BTreeMap<_, _> = pos.iter().filter(|(k, _)| **k != 4).map(|(k, v)| (*k, v.clone())).collect();
        let mut tds = Tds::delaunay(&pos).unwrap();
        let ch = tds.removal(4, &pos).unwrap();
        tds.apply(&ch);
        tds.validate().unwrap();
        assert_eq!(tds, Tds::delaunay(&without).unwrap());
    }

    #[test]
    fn duplicate_and_coplanar_rejected() {
        let pos = points(&[p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 0)]);
        assert!(matches!(Tds::delaunay(&pos), Err(Error::DuplicatePoint(0, 3, _))));
        let pos = points(&[p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(1, 1, 0)]);
        assert!(matches!(Tds::delaunay(&pos), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn two_three_then_three_two() {
        let pos = points(&[p(0, 0, 0), p(6, 0, 0), p(0, 6, 0), p(2, 2, 5), p(2, 2, -5)]);
        let tds = Tds::delaunay(&pos).unwrap();
        let (forward, back) = if tds.contains_tet(&[0, 1, 2, 3]) { ([0, 1, 2], [0, 3, 4]) } else { ([0, 3, 4], [0, 1, 2]) };
        let (kind, ch) = tds.flip(&forward).unwrap();
        let mut after = tds.clone();
        after.apply(&ch);
        after.validate().unwrap();
        let (kind_back, ch) = after.flip(&back).unwrap();
        assert_ne!(kind, kind_back);
        after.apply(&ch);
        assert_eq!(after, tds);
    }
}
