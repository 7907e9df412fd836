//! Deterministic SVG scatter plots of one input against one output.

use std::collections::BTreeSet;
use std::fmt::Write;

use dealab::ppslab::{axiom_closure, lemma_gap, AxiomOrder};
use dealab::{BoundingBox, Dataset, Dmu, Error, Point, Rational};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 48.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Overlay {
    /// Observations only.
    None,
    /// Points generated by the axiom closure.
    Closure,
    /// Integer points of the real technology missing from the closure.
    Gap,
    /// The real VRS frontier.
    Frontier,
}

impl std::str::FromStr for Overlay {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "none" => Ok(Overlay::None),
            "closure" => Ok(Overlay::Closure),
            "gap" => Ok(Overlay::Gap),
            "frontier" => Ok(Overlay::Frontier),
            other => Err(CliError::Input(format!("unknown overlay `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PlotOptions {
    /// Defaults to the observed maxima.
    pub bbox: Option<BoundingBox>,
    /// Closure overlay runs to the fixpoint instead of a single pass.
    pub fixpoint: bool,
    /// `(input index, output index)` to plot from higher-dimensional data.
    pub projection: Option<(usize, usize)>,
}

/// Keeps one input and one output column.
pub fn project(data: &Dataset, input: usize, output: usize) -> CliResult<Dataset> {
    if input >= data.input_count() || output >= data.output_count() {
        return Err(Error::Dimension(format!(
            "projection x{},y{} outside {} inputs and {} outputs",
            input + 1,
            output + 1,
            data.input_count(),
            data.output_count()
        ))
        .into());
    }
    let dmus = data
        .dmus()
        .iter()
        .map(|d| Dmu::new(d.name.clone(), vec![d.inputs[input].clone()], vec![d.outputs[output].clone()]))
        .collect();
    Ok(Dataset::new(dmus)?)
}

/// Vertices of the upper-left boundary of the real VRS technology: from the
/// smallest input, climb along the steepest chords to the largest output.
pub fn frontier_vertices(data: &Dataset) -> Vec<(Rational, Rational)> {
    let pts: Vec<(Rational, Rational)> = data
        .dmus()
        .iter()
        .map(|d| (d.inputs[0].clone(), d.outputs[0].clone()))
        .collect();
    let start = pts
        .iter()
        .min_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
        .expect("non-empty dataset")
        .clone();
    let mut chain = vec![start];
    loop {
        let (cx, cy) = chain.last().expect("chain starts non-empty").clone();
        let next = pts
            .iter()
            .filter(|(x, y)| *x > cx && *y > cy)
            .max_by(|a, b| {
                let slope = |p: &(Rational, Rational)| (&p.1 - &cy) / (&p.0 - &cx);
                slope(a).cmp(&slope(b)).then(a.0.cmp(&b.0))
            });
        match next {
            Some(p) => chain.push(p.clone()),
            None => break,
        }
    }
    chain
}

struct Canvas {
    xmax: f64,
    ymax: f64,
    body: String,
}

impl Canvas {
    fn px(&self, x: &Rational) -> f64 {
        MARGIN + x.to_f64().unwrap_or(0.0) / self.xmax * (SIZE - 2.0 * MARGIN)
    }

    fn py(&self, y: &Rational) -> f64 {
        SIZE - MARGIN - y.to_f64().unwrap_or(0.0) / self.ymax * (SIZE - 2.0 * MARGIN)
    }

    fn at(&self, p: &Point) -> (f64, f64) {
        (self.px(&p.inputs[0]), self.py(&p.outputs[0]))
    }

    fn line(&mut self, s: &str) {
        self.body.push_str(s);
        self.body.push('\n');
    }
}

/// Renders the plot. Output depends only on the arguments.
pub fn render(data: &Dataset, overlay: Overlay, options: &PlotOptions) -> CliResult<String> {
    let projected;
    let (data, labels) = match options.projection {
        Some((i, o)) => {
            projected = project(data, i, o)?;
            (&projected, (format!("x{}", i + 1), format!("y{}", o + 1)))
        }
        None => {
            if data.input_count() != 1 || data.output_count() != 1 {
                return Err(Error::Dimension(format!(
                    "plots need one input and one output (got {} and {}); pass a projection",
                    data.input_count(),
                    data.output_count()
                ))
                .into());
            }
            (data, ("x1".to_string(), "y1".to_string()))
        }
    };
    let bbox = match (&options.bbox, options.projection) {
        (Some(b), None) => b.clone(),
        _ => BoundingBox::covering(data)?,
    };
    bbox.check(data)?;
    let limits = bbox.limits();
    let mut canvas = Canvas {
        xmax: limits[0].max(1) as f64,
        ymax: limits[1].max(1) as f64,
        body: String::new(),
    };

    canvas.line(&format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="11">"#
    ));
    canvas.line(r#"<rect width="100%" height="100%" fill="white"/>"#);
    axes(&mut canvas, limits[0], limits[1], &labels);

    match overlay {
        Overlay::None => {}
        Overlay::Closure => {
            let order = if options.fixpoint { AxiomOrder::fixpoint() } else { AxiomOrder::single_pass() };
            let state = axiom_closure(data, &bbox, &order)?;
            let observed: BTreeSet<Point> = data.dmus().iter().map(Dmu::point).collect();
            for p in state.points.iter().filter(|p| !observed.contains(p)) {
                let (x, y) = canvas.at(p);
                canvas.line(&format!(
                    r##"<rect class="closure" x="{:.2}" y="{:.2}" width="7" height="7" fill="#4a90d9"><title>{p}</title></rect>"##,
                    x - 3.5,
                    y - 3.5
                ));
            }
        }
        Overlay::Gap | Overlay::Frontier => {
            frontier(&mut canvas, data, limits[0]);
            if overlay == Overlay::Gap {
                for p in lemma_gap(data, &bbox)? {
                    let (x, y) = canvas.at(&p);
                    canvas.line(&format!(
                        r##"<path class="gap" d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}" stroke="#d0021b" stroke-width="2"><title>{p}</title></path>"##,
                        x - 4.0,
                        y - 4.0,
                        x + 4.0,
                        y + 4.0,
                        x - 4.0,
                        y + 4.0,
                        x + 4.0,
                        y - 4.0
                    ));
                }
            }
        }
    }

    for dmu in data.dmus() {
        let p = dmu.point();
        let (x, y) = canvas.at(&p);
        canvas.line(&format!(
            r#"<circle class="observation" cx="{x:.2}" cy="{y:.2}" r="5" fill="black"><title>{} {p}</title></circle>"#,
            dmu.name
        ));
        canvas.line(&format!(r#"<text x="{:.2}" y="{:.2}">{}</text>"#, x + 7.0, y - 7.0, dmu.name));
    }
    canvas.line("</svg>");
    Ok(canvas.body)
}

fn axes(canvas: &mut Canvas, xmax: i64, ymax: i64, labels: &(String, String)) {
    let origin = (MARGIN, SIZE - MARGIN);
    let mut grid = String::from(r##"<g class="axes" stroke="#999" stroke-width="1">"##);
    write!(
        grid,
        r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}"/><line x1="{0}" y1="{1}" x2="{0}" y2="{3}"/>"#,
        origin.0,
        origin.1,
        SIZE - MARGIN,
        MARGIN
    )
    .expect("write to string");
    grid.push_str("</g>");
    canvas.line(&grid);
    for v in 0..=xmax {
        let x = canvas.px(&Rational::from_integer(v.into()));
        canvas.line(&format!(r#"<text class="tick" x="{x:.2}" y="{:.2}" text-anchor="middle">{v}</text>"#, origin.1 + 16.0));
    }
    for v in 0..=ymax {
        let y = canvas.py(&Rational::from_integer(v.into()));
        canvas.line(&format!(r#"<text class="tick" x="{:.2}" y="{:.2}" text-anchor="end">{v}</text>"#, origin.0 - 8.0, y + 4.0));
    }
    canvas.line(&format!(
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        SIZE / 2.0,
        SIZE - 10.0,
        labels.0
    ));
    canvas.line(&format!(r#"<text x="12" y="{:.2}" text-anchor="middle">{}</text>"#, SIZE / 2.0, labels.1));
}

fn frontier(canvas: &mut Canvas, data: &Dataset, xmax: i64) {
    let chain = frontier_vertices(data);
    let (x0, _) = chain.first().expect("non-empty chain").clone();
    let (_, ylast) = chain.last().expect("non-empty chain").clone();
    let mut vertices = vec![(x0, Rational::zero())];
    vertices.extend(chain);
    let right = Rational::from_integer(xmax.into());
    if vertices.last().is_some_and(|(x, _)| *x < right) {
        vertices.push((right, ylast));
    }
    let points: Vec<String> = vertices
        .iter()
        .map(|(x, y)| format!("{:.2},{:.2}", canvas.px(x), canvas.py(y)))
        .collect();
    canvas.line(&format!(
        r##"<polyline class="frontier" points="{}" fill="none" stroke="#333" stroke-width="1.5"/>"##,
        points.join(" ")
    ));
}
