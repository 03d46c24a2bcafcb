use std::collections::BTreeMap;

use super::group::{coset_enumeration, fundamental_group, CosetOutcome};
use super::homology::{euler_characteristic, homology, Ring};
use super::{AbstractComplex, Simplex, Vertex};
use crate::error::{Error, Result};

/// Largest complex dimension the scan accepts.
pub const MAX_SCAN_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    /// Run coset enumeration on 3-dimensional links.
    pub pi1: bool,
    pub limit: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            pi1: false,
            limit: 500,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkVerdict {
    /// Decided exactly (link dimension at most 2).
    Sphere,
    /// Homology sphere; no PL claim is made.
    HomologySphere,
    NotSphere(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkReport {
    pub simplex: Simplex,
    /// `dim K - dim τ - 1`.
    pub link_dim: usize,
    pub z_homology_sphere: bool,
    pub f2_homology_sphere: bool,
    pub verdict: LinkVerdict,
    pub pi1: Option<CosetOutcome>,
}

impl LinkReport {
    pub fn passes(&self) -> bool {
        !matches!(self.verdict, LinkVerdict::NotSphere(_))
    }
}

fn is_homology_sphere(link: &AbstractComplex, k: usize, ring: Ring) -> bool {
    let h = homology(link, ring, true);
    if h.len() != k + 1 {
        return false;
    }
    h.iter().enumerate().all(|(d, g)| {
        if d == k {
            g.rank == 1 && g.torsion.is_empty()
        } else {
            g.is_zero()
        }
    })
}

fn vertex_degrees(link: &AbstractComplex) -> BTreeMap<Vertex, usize> {
    let mut deg: BTreeMap<Vertex, usize> = link.vertices().iter().map(|&v| (v, 0)).collect();
    for e in link.simplices_of_dim(1) {
        for v in e.vertices() {
            *deg.get_mut(v).expect("edge vertices belong to the complex") += 1;
        }
    }
    deg
}

fn is_circle(link: &AbstractComplex) -> bool {
    link.dim() == Some(1) && vertex_degrees(link).values().all(|&d| d == 2) && link.is_connected()
}

fn exact_sphere(link: &AbstractComplex, k: usize) -> std::result::Result<(), String> {
    match k {
        0 => {
            if link.len() == 2 && link.vertices().len() == 2 {
                Ok(())
            } else {
                Err(format!(
                    "link has {} simplices, expected two points",
                    link.len()
                ))
            }
        }
        1 => {
            if is_circle(link) {
                Ok(())
            } else {
                Err("link is not a circle".into())
            }
        }
        2 => {
            if link.dim() != Some(2) || !link.is_pure() {
                return Err("link is not a pure 2-complex".into());
            }
            for v in link.vertices() {
                let lk = link.link(&Simplex::vertex(*v)).expect("vertex of the link");
                if !is_circle(&lk) {
                    return Err(format!("link is not a closed surface at vertex {v}"));
                }
            }
            if !link.is_connected() {
                return Err("link is disconnected".into());
            }
            let chi = euler_characteristic(link);
            if chi == 2 {
                Ok(())
            } else {
                Err(format!("closed surface with Euler characteristic {chi}"))
            }
        }
        _ => unreachable!("exact recognition is only attempted up to dimension 2"),
    }
}

/// Checks the link of every simplex of codimension at least one. Requires a
/// pure complex of dimension at most 4.
pub fn link_manifold_scan(k: &AbstractComplex, options: &ScanOptions) -> Result<Vec<LinkReport>> {
    let Some(n) = k.dim() else {
        return Ok(Vec::new());
    };
    if n > MAX_SCAN_DIM {
        return Err(Error::input(format!(
            "link scan supports dimension at most {MAX_SCAN_DIM}, complex has dimension {n}"
        )));
    }
    if !k.is_pure() {
        return Err(Error::input("link scan requires a pure complex"));
    }
    let mut out = Vec::new();
    for tau in k.simplices().iter().filter(|s| s.dim() < n) {
        let link = k.link(tau)?;
        let link_dim = n - tau.dim() - 1;
        let z = is_homology_sphere(&link, link_dim, Ring::Integers);
        let f2 = is_homology_sphere(&link, link_dim, Ring::F2);
        let mut pi1 = None;
        let verdict = if link_dim <= 2 {
            match exact_sphere(&link, link_dim) {
                Ok(()) => LinkVerdict::Sphere,
                Err(reason) => LinkVerdict::NotSphere(reason),
            }
        } else if z {
            if options.pi1 {
                let p = fundamental_group(&link, None)?;
                pi1 = Some(coset_enumeration(&p, options.limit));
            }
            LinkVerdict::HomologySphere
        } else {
            LinkVerdict::NotSphere("link does not have the integral homology of a sphere".into())
        };
        out.push(LinkReport {
            simplex: tau.clone(),
            link_dim,
            z_homology_sphere: z,
            f2_homology_sphere: f2,
            verdict,
            pi1,
        });
    }
    Ok(out)
}
