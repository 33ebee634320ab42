use std::io::Read;

use serde::Serialize;

use unilift_core::json::{parse_body, parse_lattice, BundleDoc, LatticeDoc, PolytopeDoc};
use unilift_core::lifting::lifting_region;
use unilift_core::rational::{fmt_rat, parse_rat};
use unilift_core::{
    affinity_probe, coproduct, coproduct_scaled, crosspolytope_family, cube_even, emit_cut, has_unique_lifting,
    is_lattice_free, is_maximal_lattice_free, pyramid_construct, simplex_family, vol_mod_lattice_exact,
    vol_mod_lattice_mc, AffineLattice, CutInstance, Error, GaugeModel, Polytope, Rat, RatMat, RatVec,
};

use crate::{svg, Cli, Command, Construct, Input, Property};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;

/// Serialized result and whether the property asked about holds.
pub struct Output {
    pub json: String,
    pub holds: bool,
}

fn emit<T: Serialize>(value: &T, holds: bool) -> CliResult<Output> {
    let json = serde_json::to_string(value).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Output { json, holds })
}

fn read_source(path: &str) -> CliResult<String> {
    let io = |source| CliError::Io { path: path.to_string(), source };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn load(input: &Input) -> CliResult<(Polytope, AffineLattice)> {
    let (body, bundled) = parse_body(&read_source(&input.body)?)?;
    let lattice = match &input.lattice {
        Some(path) => parse_lattice(&read_source(path)?)?,
        None => bundled.unwrap_or_else(|| AffineLattice::integer(body.dim())),
    };
    if lattice.dim() != body.dim() {
        return Err(Error::DimensionMismatch { expected: body.dim(), got: lattice.dim() }.into());
    }
    Ok((body, lattice))
}

fn parse_vec(s: &str, dim: usize) -> CliResult<RatVec> {
    let v = RatVec::parse_csv(s)?;
    v.check_dim(dim)?;
    Ok(v)
}

fn anchor(body: &Polytope, f: Option<&str>) -> CliResult<RatVec> {
    match f {
        Some(s) => parse_vec(s, body.dim()),
        None => Ok(body.vertex_centroid()),
    }
}

fn strs(v: &RatVec) -> Vec<String> {
    v.to_strings()
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    let limits = cli.limits();
    match &cli.command {
        Command::Check { property, input } => {
            let (b, l) = load(input)?;
            match property {
                Property::Free => {
                    #[derive(Serialize)]
                    struct Out {
                        lattice_free: bool,
                    }
                    let v = is_lattice_free(&b, &l, limits.point_guard)?;
                    emit(&Out { lattice_free: v }, v)
                }
                Property::Maximal => {
                    #[derive(Serialize)]
                    struct Out {
                        maximal: bool,
                    }
                    let v = is_maximal_lattice_free(&b, &l, limits.point_guard)?;
                    emit(&Out { maximal: v }, v)
                }
            }
        }
        Command::Gauge { input, f, r } => {
            #[derive(Serialize)]
            struct Out {
                #[serde(skip_serializing_if = "Option::is_none")]
                r: Option<Vec<String>>,
                gauge: String,
            }
            let (b, _) = load(input)?;
            let g = GaugeModel::new(&b, &parse_vec(f, b.dim())?)?;
            let rows = r
                .iter()
                .map(|s| {
                    let r = parse_vec(s, b.dim())?;
                    Ok(Out { gauge: fmt_rat(&g.eval(&r)?), r: Some(strs(&r)) })
                })
                .collect::<CliResult<Vec<_>>>()?;
            one_or_many(rows, |o| o.r = None)
        }
        Command::Lift { input, f, r } => {
            #[derive(Serialize)]
            struct Out {
                #[serde(skip_serializing_if = "Option::is_none")]
                r: Option<Vec<String>>,
                pi: String,
                witness: Vec<String>,
            }
            let (b, _) = load(input)?;
            let g = GaugeModel::new(&b, &parse_vec(f, b.dim())?)?;
            let rows = r
                .iter()
                .map(|s| {
                    let r = parse_vec(s, b.dim())?;
                    let (pi, w) = g.trivial_lifting(&r, limits.point_guard)?;
                    Ok(Out { r: Some(strs(&r)), pi: fmt_rat(&pi), witness: strs(&w) })
                })
                .collect::<CliResult<Vec<_>>>()?;
            one_or_many(rows, |o| o.r = None)
        }
        Command::Cut { input, f, r, p } => {
            #[derive(Serialize)]
            struct Out {
                psi: Vec<String>,
                pi: Vec<String>,
            }
            let (b, _) = load(input)?;
            let f = parse_vec(f, b.dim())?;
            let g = GaugeModel::new(&b, &f)?;
            let cols = |v: &[String]| v.iter().map(|s| parse_vec(s, b.dim())).collect::<CliResult<Vec<_>>>();
            let inst = CutInstance::new(f.clone(), cols(r)?, cols(p)?)?;
            let cut = emit_cut(&g, &inst, limits.point_guard)?;
            emit(&Out { psi: cut.psi.iter().map(fmt_rat).collect(), pi: cut.pi.iter().map(fmt_rat).collect() }, true)
        }
        Command::Region { input, f, svg: svg_path, window } => {
            #[derive(Serialize)]
            struct PieceOut {
                facet: usize,
                z: Vec<String>,
                relint: bool,
                full_dimensional: bool,
                volume: String,
                vertices: Vec<Vec<String>>,
            }
            #[derive(Serialize)]
            struct Out {
                f: Vec<String>,
                pieces: Vec<PieceOut>,
            }
            let (b, l) = load(input)?;
            let f = anchor(&b, f.as_deref())?;
            let region = lifting_region(&b, &f, &l, &limits)?;
            if let Some(path) = svg_path {
                let window = window.as_deref().map(|w| parse_vec(w, 4)).transpose()?;
                let text = svg::render(&b, &l, &region, window.as_ref(), limits.point_guard)?;
                std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source })?;
            }
            let pieces = region
                .pieces()
                .iter()
                .map(|p| PieceOut {
                    facet: p.facet,
                    z: strs(&p.z),
                    relint: p.relint,
                    full_dimensional: p.polytope.is_full_dim(),
                    volume: fmt_rat(&p.polytope.volume()),
                    vertices: p.polytope.vertices().iter().map(strs).collect(),
                })
                .collect();
            emit(&Out { f: strs(&f), pieces }, true)
        }
        Command::Uvol { input, f, samples, seed } => {
            let (b, l) = load(input)?;
            let f = anchor(&b, f.as_deref())?;
            let region = lifting_region(&b, &f, &l, &limits)?;
            match samples {
                None => {
                    #[derive(Serialize)]
                    struct Out {
                        volume: String,
                        det: String,
                        f: Vec<String>,
                    }
                    let v = vol_mod_lattice_exact(&region, &l, &limits)?;
                    emit(&Out { volume: fmt_rat(&v), det: fmt_rat(&l.det_lattice()), f: strs(&f) }, true)
                }
                Some(n) => {
                    #[derive(Serialize)]
                    struct Out {
                        estimate: f64,
                        stderr: f64,
                        hits: u64,
                        samples: u64,
                        seed: u64,
                        det: String,
                        f: Vec<String>,
                    }
                    let mc = vol_mod_lattice_mc(&region, &l, *n, *seed, &limits)?;
                    emit(
                        &Out {
                            estimate: mc.estimate,
                            stderr: mc.stderr,
                            hits: mc.hits,
                            samples: mc.samples,
                            seed: *seed,
                            det: fmt_rat(&l.det_lattice()),
                            f: strs(&f),
                        },
                        true,
                    )
                }
            }
        }
        Command::Unique { input, f, strict } => {
            #[derive(Serialize)]
            struct Out {
                unique: bool,
                volume: String,
                f: Vec<String>,
            }
            #[derive(Serialize)]
            struct Refused {
                maximal: bool,
            }
            let (b, l) = load(input)?;
            let f = f.as_deref().map(|s| parse_vec(s, b.dim())).transpose()?;
            match has_unique_lifting(&b, &l, f.as_ref(), *strict, &limits) {
                Ok(u) => emit(&Out { unique: u.unique, volume: fmt_rat(&u.volume), f: strs(&u.f) }, u.unique),
                Err(Error::NotMaximal) => emit(&Refused { maximal: false }, false),
                Err(e) => Err(e.into()),
            }
        }
        Command::Construct(c) => construct(c),
        Command::ProbeAffinity { input, f } => {
            #[derive(Serialize)]
            struct Out {
                anchors: Vec<Vec<String>>,
                volumes: Vec<String>,
                affine: bool,
            }
            let (b, l) = load(input)?;
            let anchors = f.iter().map(|s| parse_vec(s, b.dim())).collect::<CliResult<Vec<_>>>()?;
            let volumes = affinity_probe(&b, &l, &anchors, &limits)?;
            let affine = fits_affine(&anchors, &volumes)?;
            emit(
                &Out {
                    anchors: anchors.iter().map(strs).collect(),
                    volumes: volumes.iter().map(fmt_rat).collect(),
                    affine,
                },
                affine,
            )
        }
    }
}

/// A single row is printed bare, several as an array that keeps their inputs.
fn one_or_many<T: Serialize>(mut rows: Vec<T>, strip: impl Fn(&mut T)) -> CliResult<Output> {
    if rows.len() == 1 {
        let mut row = rows.pop().expect("one row");
        strip(&mut row);
        emit(&row, true)
    } else {
        emit(&rows, true)
    }
}

/// Whether some affine function of the anchor reproduces every volume.
fn fits_affine(anchors: &[RatVec], volumes: &[Rat]) -> CliResult<bool> {
    let one = RatVec::new(vec![Rat::from_integer(1.into())]);
    let lhs: Vec<RatVec> = anchors.iter().map(|a| a.concat(&one)).collect();
    let full: Vec<RatVec> = lhs.iter().zip(volumes).map(|(r, v)| r.concat(&RatVec::new(vec![v.clone()]))).collect();
    Ok(RatMat::from_rows(&lhs)?.rank() == RatMat::from_rows(&full)?.rank())
}

fn parse_scalar(s: &str) -> CliResult<Rat> {
    Ok(parse_rat(s)?)
}

fn construct(c: &Construct) -> CliResult<Output> {
    let body_doc = |p: &Polytope| emit(&PolytopeDoc::from_polytope(p), true);
    match c {
        Construct::Coproduct { body, c, mu } => {
            let bodies =
                body.iter().map(|path| Ok(parse_body(&read_source(path)?)?.0)).collect::<CliResult<Vec<_>>>()?;
            if bodies.len() < 2 {
                return Err(CliError::Usage("coproduct needs at least two --body files".into()));
            }
            let p = if mu.is_empty() && c.is_empty() {
                let mut acc = bodies[0].clone();
                for b in &bodies[1..] {
                    acc = coproduct(&acc, b)?;
                }
                acc
            } else {
                if mu.len() != bodies.len() {
                    return Err(CliError::Usage("give one --mu per body".into()));
                }
                let anchors = if c.is_empty() {
                    bodies.iter().map(|b| RatVec::zeros(b.dim())).collect()
                } else if c.len() == bodies.len() {
                    c.iter().zip(&bodies).map(|(s, b)| parse_vec(s, b.dim())).collect::<CliResult<Vec<_>>>()?
                } else {
                    return Err(CliError::Usage("give one --c per body".into()));
                };
                let weights = mu.iter().map(|s| parse_scalar(s)).collect::<CliResult<Vec<_>>>()?;
                coproduct_scaled(&bodies, &anchors, &weights)?
            };
            body_doc(&p)
        }
        Construct::Pyramid { body, c, gamma, mu } => {
            let (b, _) = parse_body(&read_source(body)?)?;
            let c = parse_vec(c, b.dim())?;
            body_doc(&pyramid_construct(&b, &c, &parse_scalar(gamma)?, &parse_scalar(mu)?)?)
        }
        Construct::Simplex { a } => body_doc(&simplex_family(&RatVec::parse_csv(a)?)?),
        Construct::Cross { a } => body_doc(&crosspolytope_family(&RatVec::parse_csv(a)?)?),
        Construct::Cube { n } => {
            let (b, l) = cube_even(*n)?;
            emit(&BundleDoc { body: PolytopeDoc::from_polytope(&b), lattice: Some(LatticeDoc::from_lattice(&l)) }, true)
        }
    }
}
