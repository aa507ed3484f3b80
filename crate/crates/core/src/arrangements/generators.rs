//! Built-in arrangements.

use std::fmt;
use std::str::FromStr;

use super::{Arrangement, CurveDecl, PointDecl, SurfaceClass};
use crate::numth::is_prime;
use crate::{Error, Result};

fn line(id: String) -> CurveDecl {
    CurveDecl {
        id,
        genus: 0,
        self_int: 1,
        block: 1,
        u: 1,
    }
}

fn line_arrangement(curves: Vec<CurveDecl>, points: Vec<PointDecl>) -> Arrangement {
    Arrangement {
        line_arrangement: true,
        blocks: 1,
        surface: SurfaceClass::projective_plane(),
        curves,
        points,
    }
}

fn bad_parameter(what: &str) -> Error {
    Error::Parse {
        what: "generator parameters",
        message: what.to_string(),
    }
}

/// `d` lines in general position: only nodes.
pub fn gen_general_lines(d: usize) -> Result<Arrangement> {
    if d < 3 {
        return Err(bad_parameter("general lines need d >= 3"));
    }
    let curves = (1..=d).map(|i| line(format!("L{i}"))).collect();
    let mut points = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            points.push(PointDecl::new([format!("L{i}"), format!("L{j}")]));
        }
    }
    Ok(line_arrangement(curves, points))
}

/// The three pencils of `(x^m - y^m)(y^m - z^m)(x^m - z^m) = 0`:
/// `A_a: x = ζ^a y`, `B_b: y = ζ^b z`, `C_c: x = ζ^c z`. `A_a`, `B_b` and
/// `C_{a+b}` are concurrent; each pencil also has its own centre.
fn ceva_pencils(m: usize) -> (Vec<[String; 3]>, [Vec<String>; 3]) {
    let name = |pencil: char, i: usize| format!("{pencil}{i}");
    let mut triples = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            triples.push([name('A', a), name('B', b), name('C', (a + b) % m)]);
        }
    }
    let pencils = ['A', 'B', 'C'].map(|c| (0..m).map(|i| name(c, i)).collect::<Vec<_>>());
    (triples, pencils)
}

/// CEVA(m). For `m = 1` this is the triangle.
pub fn gen_ceva(m: usize) -> Result<Arrangement> {
    if m == 0 {
        return Err(bad_parameter("CEVA(m) needs m >= 1"));
    }
    if m == 1 {
        let mut a = gen_general_lines(3)?;
        for (c, id) in a.curves.iter_mut().zip(["A0", "B0", "C0"]) {
            c.id = id.into();
        }
        a.points = vec![
            PointDecl::new(["A0", "B0"]),
            PointDecl::new(["A0", "C0"]),
            PointDecl::new(["B0", "C0"]),
        ];
        return Ok(a);
    }
    let (triples, pencils) = ceva_pencils(m);
    let curves = pencils.iter().flatten().cloned().map(line).collect();
    let mut points: Vec<PointDecl> = triples.into_iter().map(PointDecl::new).collect();
    points.extend(pencils.iter().map(|p| PointDecl::new(p.clone())));
    Ok(line_arrangement(curves, points))
}

/// Lines of the projective plane over the prime field with `m` elements.
pub fn gen_pg2(m: u64) -> Result<Arrangement> {
    if !is_prime(m) {
        return Err(bad_parameter(&format!("PG(2,m) needs m prime, got {m}")));
    }
    // normalised representatives: first non-zero coordinate is 1
    let mut elems = Vec::new();
    for a in 0..m {
        for b in 0..m {
            elems.push([1, a, b]);
        }
    }
    for b in 0..m {
        elems.push([0, 1, b]);
    }
    elems.push([0, 0, 1]);

    let curves = (1..=elems.len()).map(|i| line(format!("L{i}"))).collect();
    let points = elems
        .iter()
        .map(|pt| {
            PointDecl::new(
                elems
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| (0..3).map(|k| l[k] * pt[k]).sum::<u64>() % m == 0)
                    .map(|(i, _)| format!("L{}", i + 1)),
            )
        })
        .collect();
    Ok(line_arrangement(curves, points))
}

/// Proper transform of CEVA(m) on the plane blown up at its three
/// `m`-points: `3m` rational curves of self-intersection 0 in three blocks.
pub fn gen_underline_ceva(m: usize) -> Result<Arrangement> {
    if m < 3 {
        return Err(bad_parameter("blown-up CEVA(m) needs m >= 3"));
    }
    let (triples, pencils) = ceva_pencils(m);
    let curves = pencils
        .iter()
        .enumerate()
        .flat_map(|(b, pencil)| {
            pencil.iter().map(move |id| CurveDecl {
                id: id.clone(),
                genus: 0,
                self_int: 0,
                block: b + 1,
                u: 1,
            })
        })
        .collect();
    Ok(Arrangement {
        line_arrangement: false,
        blocks: 3,
        surface: SurfaceClass::projective_plane().blown_up(3),
        curves,
        points: triples.into_iter().map(PointDecl::new).collect(),
    })
}

/// Three blocks on `P¹×P¹` of classes (1,0), (0,1), (1,1) in general
/// position; all crossings are nodes.
pub fn gen_p1xp1(d1: usize, d2: usize, d3: usize) -> Result<Arrangement> {
    if d1 < 3 || d2 < 3 || d3 < 3 {
        return Err(bad_parameter("P1xP1 blocks need at least 3 curves each"));
    }
    let spec = [('A', d1, 0), ('B', d2, 0), ('C', d3, 2)];
    let mut curves = Vec::new();
    for (b, &(prefix, n, self_int)) in spec.iter().enumerate() {
        for i in 1..=n {
            curves.push(CurveDecl {
                id: format!("{prefix}{i}"),
                genus: 0,
                self_int,
                block: b + 1,
                u: 1,
            });
        }
    }
    let ids = |prefix: char, n: usize| (1..=n).map(move |i| format!("{prefix}{i}"));
    let mut points = Vec::new();
    for a in ids('A', d1) {
        for b in ids('B', d2) {
            points.push(PointDecl::new([a.clone(), b]));
        }
    }
    for a in ids('A', d1).chain(ids('B', d2)) {
        for c in ids('C', d3) {
            points.push(PointDecl::new([a.clone(), c]));
        }
    }
    for i in 1..=d3 {
        for j in i + 1..=d3 {
            for _ in 0..2 {
                points.push(PointDecl::new([format!("C{i}"), format!("C{j}")]));
            }
        }
    }
    Ok(Arrangement {
        line_arrangement: false,
        blocks: 3,
        surface: SurfaceClass::p1xp1(),
        curves,
        points,
    })
}

/// A named built-in generator with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    GeneralLines(usize),
    Ceva(usize),
    Pg2(u64),
    UnderlineCeva(usize),
    P1xP1(usize, usize, usize),
}

impl Generator {
    /// `kind` is one of `lines`, `ceva`, `pg2`, `ceva-blowup`, `p1xp1`.
    pub fn parse(kind: &str, params: &[u64]) -> Result<Self> {
        let want = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(bad_parameter(&format!(
                    "`{kind}` takes {n} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        Ok(match kind {
            "lines" | "general" => {
                want(1)?;
                Generator::GeneralLines(params[0] as usize)
            }
            "ceva" => {
                want(1)?;
                Generator::Ceva(params[0] as usize)
            }
            "pg2" => {
                want(1)?;
                Generator::Pg2(params[0])
            }
            "ceva-blowup" | "underline-ceva" => {
                want(1)?;
                Generator::UnderlineCeva(params[0] as usize)
            }
            "p1xp1" => {
                want(3)?;
                Generator::P1xP1(params[0] as usize, params[1] as usize, params[2] as usize)
            }
            other => return Err(bad_parameter(&format!("unknown generator `{other}`"))),
        })
    }

    pub fn build(self) -> Result<Arrangement> {
        match self {
            Generator::GeneralLines(d) => gen_general_lines(d),
            Generator::Ceva(m) => gen_ceva(m),
            Generator::Pg2(m) => gen_pg2(m),
            Generator::UnderlineCeva(m) => gen_underline_ceva(m),
            Generator::P1xP1(a, b, c) => gen_p1xp1(a, b, c),
        }
    }
}

/// `"ceva 3"`, `"p1xp1 3 4 5"`.
impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut words = s.split_whitespace();
        let kind = words
            .next()
            .ok_or_else(|| bad_parameter("empty generator"))?;
        let params = words
            .map(|w| {
                w.parse::<u64>()
                    .map_err(|_| bad_parameter(&format!("bad parameter `{w}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Generator::parse(kind, &params)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::GeneralLines(d) => write!(f, "lines {d}"),
            Generator::Ceva(m) => write!(f, "ceva {m}"),
            Generator::Pg2(m) => write!(f, "pg2 {m}"),
            Generator::UnderlineCeva(m) => write!(f, "ceva-blowup {m}"),
            Generator::P1xP1(a, b, c) => write!(f, "p1xp1 {a} {b} {c}"),
        }
    }
}
