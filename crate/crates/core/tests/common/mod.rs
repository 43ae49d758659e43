//! Worked examples shared by the golden and acceptance targets.
#![allow(dead_code)]

use diptych::monomial::Monomial;
use diptych::unproject::{Term, Trinomial};

pub fn tri(s: &str) -> Trinomial {
    Trinomial::parse(s).unwrap()
}

pub fn term(s: &str) -> Term {
    match s.strip_prefix('-') {
        Some(rest) => Term::neg(Monomial::parse(rest).unwrap()),
        None => Term::pos(Monomial::parse(s).unwrap()),
    }
}

/// One worked pentagram: the upper triangle row by row, then the equations
/// labelled 23.45, 12.34, 12.35, 13.45, 12.45.
pub struct Worked {
    pub rows: [&'static str; 4],
    pub equations: [&'static str; 5],
}

pub const WORKED: [Worked; 5] = [
    Worked {
        rows: ["y_3 x_2^3 -B -x_1", "y_4 LM^3 -x_3A", "x_3 LM^4", "x_2"],
        equations: [
            "x_2y_4=x_3^2A+L^2M^7",
            "x_3y_3=y_4B+x_2^3LM^3",
            "x_1y_4=x_2^3x_3A+y_3LM^4",
            "x_1x_3=x_2^4+BLM^4",
            "x_2y_3=x_3AB+x_1LM^3",
        ],
    },
    Worked {
        rows: ["y_3 x_1 -AB -x_0", "x_3 LM^3 -x_2^3", "x_2 BM", "x_1"],
        equations: [
            "x_1x_3=x_2^4+BLM^4",
            "x_2y_3=ABx_3+LM^3x_1",
            "x_0x_3=x_1x_2^3+BMy_3",
            "x_0x_2=x_1^2+AB^2M",
            "x_1y_3=ABx_2^3+LM^3x_0",
        ],
    },
    Worked {
        rows: ["y_3 LM^2x_0 -ABx_2^2 -y_2", "x_2 M -x_1", "x_1 AB^2", "x_0"],
        equations: [
            "x_0x_2=x_1^2+AB^2M",
            "x_1y_3=ABx_2^3+LM^3x_0",
            "x_2y_2=AB^2y_3+LM^2x_0x_1",
            "x_1y_2=A^2B^3x_2^2+LM^2x_0^2",
            "x_0y_3=ABx_1x_2^2+My_2",
        ],
    },
    Worked {
        rows: ["y_2 LMx_0^2 -A^2B^3x_2 -y_1", "x_2 M -x_1", "x_1 AB^2", "x_0"],
        equations: [
            "x_0x_2=x_1^2+AB^2M",
            "x_1y_2=A^2B^3x_2^2+LM^2x_0^2",
            "x_2y_1=AB^2y_2+LMx_0^2x_1",
            "x_1y_1=A^3B^5x_2+LMx_0^3",
            "x_0y_2=A^2B^3x_1x_2+My_1",
        ],
    },
    Worked {
        rows: ["y_1 Lx_0^3 -A^3B^5 -y_0", "x_2 M -x_1", "x_1 AB^2", "x_0"],
        equations: [
            "x_0x_2=x_1^2+AB^2M",
            "x_1y_1=A^3B^5x_2+LMx_0^3",
            "x_2y_0=AB^2y_1+Lx_0^3x_1",
            "x_1y_0=A^4B^7+Lx_0^4",
            "x_0y_1=A^3B^5x_1+My_0",
        ],
    },
];

/// Rows `generator: L M A B` of the `(4, 6, 6)` weight table.
pub const TABLE_466: &str = "
x_0 -1/4 0 505/4 483
x_1 0 1/6 22 505/6
x_2 1/4 1 23/4 22
x_3 1 23/6 1 23/6
x_4 23/4 22 1/4 1
x_5 22 505/6 0 1/6
x_6 505/4 483 -1/4 0
y_0 0 -1/6 483 11087/6
y_1 1/4 5/6 1427/4 8189/6
y_2 1/2 11/6 461/2 5291/6
y_3 3/4 17/6 417/4 2393/6
y_4 7/4 20/3 329/4 944/3
y_5 11/4 21/2 241/4 461/2
y_6 15/4 43/3 153/4 439/3
y_7 19/4 109/6 65/4 373/6
y_8 21/2 241/6 21/2 241/6
y_9 65/4 373/6 19/4 109/6
y_{10} 153/4 439/3 15/4 43/3
y_{11} 241/4 461/2 11/4 21/2
y_{12} 329/4 944/3 7/4 20/3
y_{13} 417/4 2393/6 3/4 17/6
y_{14} 461/2 5291/6 1/2 11/6
y_{15} 1427/4 8189/6 1/4 5/6
y_{16} 483 11087/6 0 -1/6
";
