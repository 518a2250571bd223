//! Lattices as oriented multigraphs, with twisted-boundary link marking.
//!
//! A link `l = (x, y)` transforms under a gauge transformation as
//! `g_l ↦ g_x g_l g_y⁻¹`, or `g_x g_l φ(g_y)⁻¹` when it is twisted: the twist
//! always acts on the head.

use std::collections::BTreeSet;

use crate::automorphisms::GroupEndomorphism;
use crate::error::{Error, Result};
use crate::group::GroupRef;
use crate::textio::{content_lines, parse_err};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeGraph {
    sites: usize,
    edges: Vec<(usize, usize)>,
    /// Lattice direction of each edge and whether it wraps around.
    directions: Vec<Option<(usize, bool)>>,
    dims: Option<Vec<usize>>,
}

impl LatticeGraph {
    pub fn new(sites: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(t, h)) = edges.iter().find(|&&(t, h)| t >= sites || h >= sites) {
            return Err(Error::BadDims(format!("edge ({t}, {h}) leaves a lattice of {sites} sites")));
        }
        Ok(Self {
            sites,
            directions: vec![None; edges.len()],
            edges,
            dims: None,
        })
    }

    /// `Π dims` sites, site index `Σ x_k Π_{j<k} dims_j`; one `+k` edge per
    /// site and direction, wrapping in periodic directions.
    pub fn hypercubic(dims: &[usize], periodic: &[bool]) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::BadDims("dimensions must be a non-empty list of positive sizes".into()));
        }
        if periodic.len() != dims.len() {
            return Err(Error::BadDims(format!(
                "{} periodicity flags for {} dimensions",
                periodic.len(),
                dims.len()
            )));
        }
        let sites = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::BadDims("too many sites".into()))?;
        let strides: Vec<usize> = dims
            .iter()
            .scan(1, |s, &d| {
                let out = *s;
                *s *= d;
                Some(out)
            })
            .collect();
        let mut edges = Vec::new();
        let mut directions = Vec::new();
        for x in 0..sites {
            for (k, (&d, &stride)) in dims.iter().zip(&strides).enumerate() {
                let coord = (x / stride) % d;
                if coord + 1 < d {
                    edges.push((x, x + stride));
                    directions.push(Some((k, false)));
                } else if periodic[k] {
                    edges.push((x, x - coord * stride));
                    directions.push(Some((k, true)));
                }
            }
        }
        Ok(Self {
            sites,
            edges,
            directions,
            dims: Some(dims.to_vec()),
        })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn dims(&self) -> Option<&[usize]> {
        self.dims.as_deref()
    }

    /// Indices of the wrap-around edges in direction `k` of a hypercubic lattice.
    pub fn wrap_edges(&self, k: usize) -> Result<Vec<usize>> {
        match &self.dims {
            Some(d) if k < d.len() => Ok((0..self.edges.len())
                .filter(|&e| self.directions[e] == Some((k, true)))
                .collect()),
            Some(d) => Err(Error::BadDims(format!("direction {k} of a {}-dimensional lattice", d.len()))),
            None => Err(Error::BadDims("wrap edges need a hypercubic lattice".into())),
        }
    }

    /// Parses `V n` followed by `tail head [twisted]` lines. Returns the graph
    /// and the indices of edges marked `twisted`.
    pub fn from_edge_list(text: &str) -> Result<(Self, BTreeSet<usize>)> {
        let mut lines = content_lines(text);
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty edge list"))?;
        let sites = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["V", n] => n.parse::<usize>().map_err(|e| parse_err(hl, e.to_string()))?,
            _ => return Err(parse_err(hl, "expected 'V <sites>'")),
        };
        let mut edges = Vec::new();
        let mut twisted = BTreeSet::new();
        for (line, content) in lines {
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let (t, h, tw) = match tokens[..] {
                [t, h] => (t, h, false),
                [t, h, "twisted"] => (t, h, true),
                _ => return Err(parse_err(line, format!("expected 'tail head [twisted]', got '{content}'"))),
            };
            let parse = |s: &str| -> Result<usize> {
                let v = s.parse::<usize>().map_err(|e| parse_err(line, format!("'{s}': {e}")))?;
                if v >= sites {
                    return Err(parse_err(line, format!("site {v} out of range for V = {sites}")));
                }
                Ok(v)
            };
            let edge = (parse(t)?, parse(h)?);
            if tw {
                twisted.insert(edges.len());
            }
            edges.push(edge);
        }
        Ok((Self::new(sites, edges)?, twisted))
    }

    pub fn to_edge_list(&self, twisted: &BTreeSet<usize>) -> String {
        let mut out = format!("V {}\n", self.sites);
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            if twisted.contains(&i) {
                out.push_str(&format!("{t} {h} twisted\n"));
            } else {
                out.push_str(&format!("{t} {h}\n"));
            }
        }
        out
    }

    /// Components of the undirected graph on the edges accepted by `keep`,
    /// each sorted, ordered by smallest site.
    pub fn components_with(&self, keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.sites).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if keep(e) {
                let (a, b) = (find(&mut parent, t), find(&mut parent, h));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.sites];
        for x in 0..self.sites {
            let r = find(&mut parent, x);
            if index[r] == usize::MAX {
                index[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[index[r]].push(x);
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        self.components_with(|_| true).len() <= 1
    }
}

/// Which edges a twist applies to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeSelector {
    Explicit(Vec<usize>),
    /// The wrap-around edges of one direction of a hypercubic lattice.
    WrapDirection(usize),
}

/// A twist endomorphism and the edges it acts on.
#[derive(Clone, Debug)]
pub struct TwistSpec {
    pub twist: GroupEndomorphism,
    pub twisted_edges: BTreeSet<usize>,
    /// Non-dynamical sites added by [`dangling_boundary_extension`]; they
    /// carry no matter and no Gauss law.
    pub virtual_sites: BTreeSet<usize>,
}

impl TwistSpec {
    /// `∂X`: the distinct head sites of twisted edges.
    pub fn boundary_sites(&self, lattice: &LatticeGraph) -> BTreeSet<usize> {
        self.twisted_edges.iter().map(|&e| lattice.edges[e].1).collect()
    }

    /// Twisted edges whose tail and head coincide.
    pub fn twisted_self_loops(&self, lattice: &LatticeGraph) -> Vec<usize> {
        self.twisted_edges
            .iter()
            .copied()
            .filter(|&e| lattice.edges[e].0 == lattice.edges[e].1)
            .collect()
    }

    pub fn group(&self) -> &GroupRef {
        self.twist.group()
    }
}

pub fn make_twist(lattice: &LatticeGraph, twist: GroupEndomorphism, selector: &EdgeSelector) -> Result<TwistSpec> {
    let twisted_edges: BTreeSet<usize> = match selector {
        EdgeSelector::Explicit(list) => {
            if let Some(&e) = list.iter().find(|&&e| e >= lattice.edge_count()) {
                return Err(Error::BadParams(format!(
                    "edge {e} out of range for {} edges",
                    lattice.edge_count()
                )));
            }
            list.iter().copied().collect()
        }
        EdgeSelector::WrapDirection(k) => lattice.wrap_edges(*k)?.into_iter().collect(),
    };
    Ok(TwistSpec {
        twist,
        twisted_edges,
        virtual_sites: BTreeSet::new(),
    })
}

/// Attaches one non-dynamical site to each listed site through a link twisted
/// by `φ(g) = 1`, so that charge can leave through it.
pub fn dangling_boundary_extension(
    lattice: &LatticeGraph,
    attach_sites: &[usize],
    group: &GroupRef,
) -> Result<(LatticeGraph, TwistSpec)> {
    if let Some(&s) = attach_sites.iter().find(|&&s| s >= lattice.sites) {
        return Err(Error::BadParams(format!("attach site {s} out of range")));
    }
    let mut out = lattice.clone();
    let mut twisted_edges = BTreeSet::new();
    let mut virtual_sites = BTreeSet::new();
    for &s in attach_sites {
        let v = out.sites;
        out.sites += 1;
        twisted_edges.insert(out.edges.len());
        virtual_sites.insert(v);
        out.edges.push((s, v));
        out.directions.push(None);
    }
    Ok((
        out,
        TwistSpec {
            twist: GroupEndomorphism::constant_identity(group),
            twisted_edges,
            virtual_sites,
        },
    ))
}

/// Connected after deleting the twisted edges.
pub fn is_bulk_connected(lattice: &LatticeGraph, twist: &TwistSpec) -> bool {
    lattice.components_with(|e| !twist.twisted_edges.contains(&e)).len() <= 1
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;
    use crate::group::{builtin_group, GroupFamily};

    #[test]
    fn hypercubic_counts() {
        let l = LatticeGraph::hypercubic(&[1, 1], &[true, true]).unwrap();
        assert_eq!((l.sites(), l.edge_count()), (1, 2));
        assert_eq!(l.edges(), &[(0, 0), (0, 0)]);
        let l = LatticeGraph::hypercubic(&[2], &[true]).unwrap();
        assert_eq!((l.sites(), l.edge_count()), (2, 2));
        let l = LatticeGraph::hypercubic(&[2], &[false]).unwrap();
        assert_eq!((l.sites(), l.edge_count()), (2, 1));
        let l = LatticeGraph::hypercubic(&[3, 3], &[true, true]).unwrap();
        assert_eq!((l.sites(), l.edge_count()), (9, 18));
        assert!(LatticeGraph::hypercubic(&[], &[]).is_err());
        assert!(LatticeGraph::hypercubic(&[2, 0], &[true, true]).is_err());
        assert!(LatticeGraph::hypercubic(&[2, 2], &[true]).is_err());
    }

    proptest! {
        #[test]
        fn hypercubic_edge_formulas(dims in proptest::collection::vec(1usize..5, 1..4), periodic in any::<bool>()) {
            let flags = vec![periodic; dims.len()];
            let l = LatticeGraph::hypercubic(&dims, &flags).unwrap();
            let v: usize = dims.iter().product();
            let expected = if periodic {
                dims.len() * v
            } else {
                dims.iter().map(|&d| (d - 1) * v / d).sum()
            };
            prop_assert_eq!(l.edge_count(), expected);
            let neighbours_differ_in_one_coordinate = l.edges().iter().all(|&(t, h)| {
                let mut diff = 0;
                let mut stride = 1;
                for &d in &dims {
                    if (t / stride) % d != (h / stride) % d { diff += 1; }
                    stride *= d;
                }
                diff <= 1
            });
            prop_assert!(neighbours_differ_in_one_coordinate);
        }

        #[test]
        fn edge_list_round_trip(sites in 1usize..6, raw in proptest::collection::vec((0usize..6, 0usize..6, any::<bool>()), 0..10)) {
            let edges: Vec<(usize, usize)> = raw.iter().map(|&(a, b, _)| (a % sites, b % sites)).collect();
            let twisted: BTreeSet<usize> = raw.iter().enumerate().filter(|(_, r)| r.2).map(|(i, _)| i).collect();
            let l = LatticeGraph::new(sites, edges).unwrap();
            let text = l.to_edge_list(&twisted);
            let (back, tw) = LatticeGraph::from_edge_list(&text).unwrap();
            prop_assert_eq!(&back, &l);
            prop_assert_eq!(&tw, &twisted);
            prop_assert_eq!(back.to_edge_list(&tw), text);
        }
    }

    #[test]
    fn edge_list_errors() {
        let (l, tw) = LatticeGraph::from_edge_list("V 2\n0 1\n").unwrap();
        assert_eq!(l.edges(), &[(0, 1)]);
        assert!(tw.is_empty());
        assert_eq!(
            LatticeGraph::from_edge_list("V 2\n0 1\n# note\n0 2\n").unwrap_err(),
            Error::ParseError {
                line: 4,
                message: "site 2 out of range for V = 2".into()
            }
        );
        assert!(matches!(LatticeGraph::from_edge_list("0 1"), Err(Error::ParseError { line: 1, .. })));
        assert!(matches!(LatticeGraph::from_edge_list("V 2\n0 1 bent"), Err(Error::ParseError { line: 2, .. })));
    }

    #[test]
    fn connectivity() {
        let l = LatticeGraph::hypercubic(&[3, 3], &[true, true]).unwrap();
        assert!(l.is_connected());
        let g = Arc::new(builtin_group(&GroupFamily::Cyclic(3)).unwrap());
        let t = make_twist(&l, GroupEndomorphism::inversion(&g).unwrap(), &EdgeSelector::WrapDirection(0)).unwrap();
        assert_eq!(t.twisted_edges.len(), 3);
        assert!(is_bulk_connected(&l, &t));
        assert_eq!(t.boundary_sites(&l).len(), 3);
        assert!(!LatticeGraph::new(4, vec![(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(LatticeGraph::new(1, vec![]).unwrap().is_connected());
        let chain = LatticeGraph::hypercubic(&[2], &[false]).unwrap();
        let t = make_twist(&chain, GroupEndomorphism::identity(&g), &EdgeSelector::Explicit(vec![0])).unwrap();
        assert!(!is_bulk_connected(&chain, &t));
        assert!(chain.wrap_edges(0).unwrap().is_empty());
        assert!(make_twist(&chain, GroupEndomorphism::identity(&g), &EdgeSelector::Explicit(vec![1])).is_err());
        assert!(make_twist(&chain, GroupEndomorphism::identity(&g), &EdgeSelector::WrapDirection(1)).is_err());
    }

    #[test]
    fn self_loops_are_flagged() {
        let l = LatticeGraph::hypercubic(&[1, 1], &[true, true]).unwrap();
        let g = Arc::new(builtin_group(&GroupFamily::Cyclic(2)).unwrap());
        let t = make_twist(&l, GroupEndomorphism::identity(&g), &EdgeSelector::WrapDirection(1)).unwrap();
        assert_eq!(t.twisted_self_loops(&l), vec![1]);
    }

    #[test]
    fn dangling_extension() {
        let g = Arc::new(builtin_group(&GroupFamily::Cyclic(2)).unwrap());
        let l = LatticeGraph::hypercubic(&[3, 2], &[false, false]).unwrap();
        let (same, t) = dangling_boundary_extension(&l, &[], &g).unwrap();
        assert_eq!(same.edges(), l.edges());
        assert!(t.twisted_edges.is_empty());
        let top = [3, 4, 5];
        let (ext, t) = dangling_boundary_extension(&l, &top, &g).unwrap();
        assert_eq!(ext.sites() - l.sites(), 3);
        assert_eq!(ext.edge_count() - l.edge_count(), 3);
        assert_eq!(t.virtual_sites, BTreeSet::from([6, 7, 8]));
        assert_eq!(t.boundary_sites(&ext), t.virtual_sites);
        assert!(t.twist.images().iter().all(|&x| x == 0));
        let one = LatticeGraph::new(1, vec![]).unwrap();
        let (ext, _) = dangling_boundary_extension(&one, &[0], &g).unwrap();
        assert_eq!((ext.sites(), ext.edge_count()), (2, 1));
        assert!(dangling_boundary_extension(&one, &[1], &g).is_err());
    }
}
