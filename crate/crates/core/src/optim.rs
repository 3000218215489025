//! Box-constrained Nelder–Mead in two dimensions.
//!
//! Trial points are projected onto the box. The search stops once every vertex
//! lies within `tol` of the best vertex in each coordinate.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Bounds {
    pub lower: [f64; 2],
    pub upper: [f64; 2],
}

impl Bounds {
    fn project(&self, x: [f64; 2]) -> [f64; 2] {
        [
            x[0].clamp(self.lower[0], self.upper[0]),
            x[1].clamp(self.lower[1], self.upper[1]),
        ]
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Minimum {
    pub x: [f64; 2],
    #[cfg_attr(not(test), allow(dead_code))]
    pub value: f64,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

pub(crate) fn nelder_mead<F>(
    f: F,
    start: [f64; 2],
    steps: [f64; 2],
    bounds: Bounds,
    tol: f64,
    max_iterations: usize,
) -> Minimum
where
    F: Fn([f64; 2]) -> f64,
{
    let start = bounds.project(start);
    // Step away from the start towards the interior so no edge collapses on a wall.
    let offset = |axis: usize| {
        let mut x = start;
        let up = start[axis] + steps[axis];
        x[axis] = if up <= bounds.upper[axis] {
            up
        } else {
            start[axis] - steps[axis]
        };
        bounds.project(x)
    };
    let mut simplex = [start, offset(0), offset(1)];
    let mut values = simplex.map(&f);

    let mut iterations = 0;
    while iterations < max_iterations {
        order(&mut simplex, &mut values);
        let converged = simplex[1..]
            .iter()
            .all(|v| (v[0] - simplex[0][0]).abs() <= tol && (v[1] - simplex[0][1]).abs() <= tol);
        if converged {
            break;
        }
        iterations += 1;

        let centroid = [
            0.5 * (simplex[0][0] + simplex[1][0]),
            0.5 * (simplex[0][1] + simplex[1][1]),
        ];
        let along = |t: f64| {
            bounds.project([
                centroid[0] + t * (simplex[2][0] - centroid[0]),
                centroid[1] + t * (simplex[2][1] - centroid[1]),
            ])
        };

        let reflected = along(-REFLECT);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = along(-EXPAND);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
            continue;
        }
        if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[2] {
            let c = along(-CONTRACT);
            (c, f(c))
        } else {
            let c = along(CONTRACT);
            (c, f(c))
        };
        if fc < values[2].min(fr) {
            simplex[2] = contracted;
            values[2] = fc;
            continue;
        }
        for k in 1..3 {
            simplex[k] = bounds.project([
                simplex[0][0] + SHRINK * (simplex[k][0] - simplex[0][0]),
                simplex[0][1] + SHRINK * (simplex[k][1] - simplex[0][1]),
            ]);
            values[k] = f(simplex[k]);
        }
    }
    order(&mut simplex, &mut values);
    Minimum {
        x: simplex[0],
        value: values[0],
    }
}

/// Sorts vertices by value; ties keep the earlier vertex first.
fn order(simplex: &mut [[f64; 2]; 3], values: &mut [f64; 3]) {
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let (s, v) = (*simplex, *values);
    for (slot, &k) in idx.iter().enumerate() {
        simplex[slot] = s[k];
        values[slot] = v[k];
    }
}
