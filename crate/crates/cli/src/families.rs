use std::fmt;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use spherekit::squeezed::nested_antichain;
use spherekit::{
    cross_boundary, cyclic_boundary, relative_squeezed_ball, relative_squeezed_sphere, sew,
    squeezed_ball, stacked_sphere, Antichain, CsFamily, Face, PairPattern, PureComplex, Vertex,
};

use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cyclic,
    Cross,
    Stacked,
    Squeezed,
    RelativeSqueezed,
    CsDelta,
    CsLambda,
    Sewn,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<Face>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antichain: Option<Vec<Vec<u32>>>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: Family) -> Result<T> {
    match v {
        Some(v) => Ok(v),
        None => Err(UsageError(format!("--family {family} requires --{flag}")).into()),
    }
}

pub fn parse_edge(s: &str) -> Result<Face> {
    let labels = s
        .split_whitespace()
        .map(|t| t.parse::<i32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| UsageError(format!("bad --edge {s:?}: {e}")))?;
    if labels.len() != 2 {
        return Err(UsageError(format!("--edge needs two labels, got {s:?}")).into());
    }
    let edge = Face::from_labels(&labels)?;
    if edge.len() != 2 {
        return Err(UsageError(format!("--edge needs two distinct labels, got {s:?}")).into());
    }
    Ok(edge)
}

/// Patterns as start lists separated by ';', for example `"1 7;2 6"`.
pub fn parse_antichain(s: &str) -> Result<Vec<Vec<u32>>> {
    s.split(';')
        .map(|p| {
            p.split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| UsageError(format!("bad --antichain {s:?}: {e}")).into())
        })
        .collect()
}

impl Params {
    /// `k` from `--k`, falling back to the value implied by `--d`.
    fn k_or(&self, family: Family, from_d: impl Fn(usize) -> usize) -> Result<usize> {
        match (self.k, self.d) {
            (Some(k), _) => Ok(k),
            (None, Some(d)) => Ok(from_d(d)),
            (None, None) => {
                Err(UsageError(format!("--family {family} requires --k or --d")).into())
            }
        }
    }

    fn antichain(&self, k: usize, n: usize) -> Result<Antichain> {
        match &self.antichain {
            Some(members) => Ok(Antichain::new(
                k,
                n as u32,
                members
                    .iter()
                    .map(|m| PairPattern::new(m.clone()))
                    .collect::<spherekit::Result<Vec<_>>>()?,
            )?),
            None => Ok(nested_antichain(k, n as u32)?),
        }
    }
}

pub struct Built {
    pub complex: PureComplex,
    /// Whether the output should be a closed sphere.
    pub is_sphere: bool,
    pub d: usize,
}

pub fn build(family: Family, p: &Params, cache: &CsFamily) -> Result<Built> {
    let sphere = |complex: PureComplex| {
        let d = complex.dim().max(0) as usize;
        Built {
            complex,
            is_sphere: true,
            d,
        }
    };
    let built = match family {
        Family::Cyclic => sphere(cyclic_boundary(
            need(p.d, "d", family)?,
            need(p.n, "n", family)?,
        )?),
        Family::Cross => sphere(cross_boundary(need(p.d, "d", family)?)?),
        Family::Stacked => sphere(stacked_sphere(
            need(p.d, "d", family)?,
            need(p.n, "n", family)?,
        )?),
        Family::Squeezed => {
            let k = p.k_or(family, |d| d.div_ceil(2))?;
            let complex = squeezed_ball(&p.antichain(k, need(p.n, "n", family)?)?);
            Built {
                complex,
                is_sphere: false,
                d: 2 * k - 1,
            }
        }
        Family::RelativeSqueezed => {
            let k = p.k_or(family, |d| d / 2 + 1)?;
            sphere(relative_squeezed_sphere(
                &p.antichain(k, need(p.n, "n", family)?)?,
            ))
        }
        Family::CsDelta => {
            let (d, n) = (need(p.d, "d", family)?, need(p.n, "n", family)?);
            match p.i {
                Some(i) => Built {
                    complex: (*cache.ball(d, i, n)?).clone(),
                    is_sphere: false,
                    d,
                },
                None => sphere((*cache.sphere(d, n)?).clone()),
            }
        }
        Family::CsLambda => {
            let k = p.k_or(family, |d| d.div_ceil(2))?;
            let n = need(p.n, "n", family)?;
            let lambda = match &p.edge {
                Some(e) => cache.lambda_sphere(k, n, e)?,
                None => cache
                    .scan_lambda_edges(k, n)?
                    .into_iter()
                    .find(|l| l.is_candidate(n))
                    .with_context(|| {
                        format!("no edge link of the host sphere has 2·{n} vertices")
                    })?,
            };
            sphere(lambda.complex)
        }
        Family::Sewn => {
            let k = p.k_or(family, |d| d.div_ceil(2))?;
            let n = need(p.n, "n", family)?;
            let host = cyclic_boundary(2 * k, n)?;
            let ball = relative_squeezed_ball(&p.antichain(k, n)?);
            let apex = Vertex::new(n as i32 + 1)?;
            sphere(sew(&host, &ball, apex)?)
        }
    };
    if built.complex.is_empty() {
        bail!("--family {family} produced the empty complex");
    }
    Ok(built)
}
