#![allow(dead_code)]

use ccut::gen::{Base, GenConfig, Glue, Step, XorShift64Star};
use ccut::graph::{families, two_sum, EdgeId, Graph, Orientation};
use ccut::planar::{embedded, faces, RotationSystem};

/// Whether some vertex bijection carries every edge of `a` onto the edge of
/// `b` with the same id.
pub fn same_up_to_relabel(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut ids_a: Vec<_> = a.edges().iter().map(|e| (e.id, e.weight)).collect();
    let mut ids_b: Vec<_> = b.edges().iter().map(|e| (e.id, e.weight)).collect();
    ids_a.sort();
    ids_b.sort();
    if ids_a != ids_b {
        return false;
    }
    let n = a.vertex_count();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let inc = a.incidence();
    // Candidates for x: vertices lying on every b-edge whose id touches x in a.
    let candidates = |x: usize| -> Vec<usize> {
        let mut c: Option<Vec<usize>> = None;
        for &p in &inc[x] {
            let e = &a.edges()[p];
            let f = b.edge(e.id).unwrap();
            let ends = vec![f.u, f.v];
            c = Some(match c {
                None => ends,
                Some(prev) => prev.into_iter().filter(|v| ends.contains(v)).collect(),
            });
        }
        let mut c = c.unwrap_or_else(|| (0..n).collect());
        c.sort_unstable();
        c.dedup();
        c
    };
    let cands: Vec<Vec<usize>> = (0..n).map(candidates).collect();
    fn go(x: usize, a: &Graph, b: &Graph, cands: &[Vec<usize>], map: &mut [usize], used: &mut [bool]) -> bool {
        if x == map.len() {
            return a.edges().iter().all(|e| {
                let f = b.edge(e.id).unwrap();
                let (u, v) = (map[e.u], map[e.v]);
                (u, v) == (f.u, f.v) || (u, v) == (f.v, f.u)
            });
        }
        for &c in &cands[x] {
            if !used[c] {
                used[c] = true;
                map[x] = c;
                if go(x + 1, a, b, cands, map, used) {
                    return true;
                }
                used[c] = false;
            }
        }
        false
    }
    go(0, a, b, &cands, &mut map, &mut used)
}

/// Backtracking Hamiltonian-cycle search.
pub fn has_hamiltonian_cycle(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 3 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        if e.u != e.v {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
    }
    fn extend(v: usize, depth: usize, adj: &[Vec<usize>], seen: &mut [bool]) -> bool {
        if depth == adj.len() {
            return adj[v].contains(&0);
        }
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                if extend(w, depth + 1, adj, seen) {
                    return true;
                }
                seen[w] = false;
            }
        }
        false
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    extend(0, 1, &adj, &mut seen)
}

fn embedded_base(b: Base) -> (Graph, RotationSystem) {
    match b {
        Base::Wheel(n) => embedded::wheel(n),
        Base::Prism => embedded::prism(),
        Base::K3 => embedded::cycle(3),
        other => panic!("{other:?} has no planar embedding here"),
    }
}

/// Rotation of `g1 (+)2 g2` built exactly as `two_sum` relabels, splicing the
/// rotation of `g2` into those of the glued endpoints.
fn splice(
    g1: &Graph,
    r1: &RotationSystem,
    e1: EdgeId,
    g2: &Graph,
    r2: &RotationSystem,
    e2: EdgeId,
    orientation: Orientation,
) -> Option<(Graph, RotationSystem)> {
    let sum = two_sum(g1, e1, g2, e2, orientation).ok()?;
    let a = *g1.edge(e1)?;
    let b = *g2.edge(e2)?;
    let (x2, y2) = match orientation {
        Orientation::Aligned => (b.u, b.v),
        Orientation::Crossed => (b.v, b.u),
    };
    let offset = g1.next_edge_id();
    let mut table = vec![0; g2.vertex_count()];
    let mut next = g1.vertex_count();
    for (x, slot) in table.iter_mut().enumerate() {
        *slot = if x == x2 {
            a.u
        } else if x == y2 {
            a.v
        } else {
            next += 1;
            next - 1
        };
    }
    let lift = |id: EdgeId| EdgeId(id.0 + offset);
    // Edges of r2 around `x`, starting after e2 and stopping before it.
    let around = |r: &RotationSystem, x: usize| -> Vec<EdgeId> {
        let rot = r.at(x);
        let k = rot.iter().position(|&id| id == e2).unwrap();
        (1..rot.len()).map(|i| lift(rot[(k + i) % rot.len()])).collect()
    };
    let try_with = |r2: &RotationSystem| -> Option<(Graph, RotationSystem)> {
        let mut order: Vec<Vec<EdgeId>> = vec![Vec::new(); sum.vertex_count()];
        for (v, slot) in order.iter_mut().enumerate().take(g1.vertex_count()) {
            let mut rot = Vec::new();
            for &id in r1.at(v) {
                if id == e1 {
                    let x = if v == a.u { x2 } else { y2 };
                    rot.extend(around(r2, x));
                } else {
                    rot.push(id);
                }
            }
            *slot = rot;
        }
        for x in 0..g2.vertex_count() {
            if x != x2 && x != y2 {
                order[table[x]] = r2.at(x).iter().map(|&id| lift(id)).collect();
            }
        }
        let rot = RotationSystem::new(&sum, order).ok()?;
        faces(&sum, &rot).ok()?;
        Some((sum.clone(), rot))
    };
    try_with(r2).or_else(|| try_with(&r2.mirrored()))
}

/// Random 2-connected planar instance: a chain of 2-sums of wheels, prisms and
/// triangles, embedded. Returns `None` if it would exceed `max_n` vertices.
pub fn random_embedded(seed: u64, parts: usize, max_n: usize) -> Option<(Graph, RotationSystem, Vec<Step>)> {
    let mut rng = XorShift64Star::seeded(seed);
    let pick = |rng: &mut XorShift64Star| match rng.below(3) {
        0 => Base::Wheel(rng.range(4, 7) as usize),
        1 => Base::Prism,
        _ => Base::K3,
    };
    let first = pick(&mut rng);
    let (mut g, mut r) = embedded_base(first);
    let mut recipe = vec![Step { base: first, glue: Glue::Start }];
    for _ in 1..parts {
        let base = pick(&mut rng);
        if g.vertex_count() + base.vertex_count() - 2 > max_n {
            break;
        }
        let (h, hr) = embedded_base(base);
        let at = g.edges()[rng.below(g.edge_count() as u64) as usize].id;
        let with = EdgeId(rng.below(h.edge_count() as u64) as usize);
        let orientation = if rng.below(2) == 0 { Orientation::Aligned } else { Orientation::Crossed };
        let (ng, nr) = splice(&g, &r, at, &h, &hr, with, orientation)?;
        g = ng;
        r = nr;
        recipe.push(Step { base, glue: Glue::TwoSum { at, with, orientation } });
    }
    Some((g, r, recipe))
}

/// Hand-built 2-connected planar fixtures with at most 12 vertices.
pub fn planar_fixtures() -> Vec<(String, Graph, RotationSystem)> {
    let mut out = Vec::new();
    for n in 3..=12 {
        let (g, r) = embedded::cycle(n);
        out.push((format!("C{n}"), g, r));
    }
    for n in 4..=12 {
        let (g, r) = embedded::wheel(n);
        out.push((format!("W{n}"), g, r));
    }
    for n in 2..=10 {
        let (g, r) = embedded::k2n(n);
        out.push((format!("K2,{n}"), g, r));
    }
    let (g, r) = embedded::prism();
    out.push(("prism".into(), g, r));
    for seed in 0..40 {
        if let Some((g, r, _)) = random_embedded(seed, 4, 12) {
            out.push((format!("sum{seed}"), g, r));
        }
    }
    out
}

pub fn small_config(seed: u64, parts: usize) -> GenConfig {
    GenConfig { seed, parts, min_size: 4, max_size: 7, weight_min: 1, weight_max: 100, allow_k5: false, one_sum_percent: 30 }
}

pub fn bowtie() -> Graph {
    ccut::graph::one_sum(&families::complete(3), 0, &families::complete(3), 0).unwrap()
}
