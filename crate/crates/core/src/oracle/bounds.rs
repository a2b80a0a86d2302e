use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::lp::fractional_chromatic_index;

/// `|E(G)| / c_f(G)`.
pub fn cms_upper_bound_fractional(g: &Graph) -> Result<BigRational> {
    let cf = fractional_chromatic_index(g)?.value;
    if cf.is_zero() {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::from_integer(g.m().into()) / cf)
}

/// Upper bounds on `cms(H)` from a subgraph `G` of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphBounds {
    /// `ν(G) |E(H)| / |E(G)|`.
    pub by_matching_number: BigRational,
    /// `|E(H)| / (⌊(|E(G)| - hint) / ν(G)⌋ + 1)` for any `hint >= cms(G)`.
    pub by_subgraph_cms: BigRational,
}

/// Both subgraph bounds for a host with `m_host` edges. `cms_hint` must be
/// at least `cms(sub)`; the caller vouches for that.
pub fn cms_upper_bound_subgraph(m_host: usize, sub: &Graph, cms_hint: usize) -> Result<SubgraphBounds> {
    if cms_hint < 1 {
        return Err(Error::InvalidHint(cms_hint));
    }
    let ms = sub.m();
    if ms == 0 {
        return Err(Error::PreconditionViolated("subgraph has no edges".into()));
    }
    if m_host < ms {
        return Err(Error::SizeMismatch(m_host, ms));
    }
    let nu = sub.matching_number().0;
    let host = BigRational::from_integer(m_host.into());
    let by_matching_number = BigRational::from_integer((nu * m_host).into()) / BigRational::from_integer(ms.into());
    let steps = ms.saturating_sub(cms_hint) / nu + 1;
    let by_subgraph_cms = host / BigRational::from_integer(steps.into());
    Ok(SubgraphBounds {
        by_matching_number,
        by_subgraph_cms,
    })
}
