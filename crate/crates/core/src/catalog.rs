//! Named Cartan matrices used throughout the tests and the CLI.

use crate::cartan::{validate_cartan, CartanData, ValidateOptions};

fn build(name: &str, m: Vec<Vec<i64>>, r: Option<Vec<i64>>) -> CartanData {
    validate_cartan(
        m,
        ValidateOptions {
            symmetrizer: r,
            allow_decomposable: false,
            name: Some(name.to_string()),
        },
    )
    .expect("catalog matrix is valid")
}

pub fn sl2() -> CartanData {
    build("A1", vec![vec![2]], None)
}

/// Type `A_n` with the usual chain numbering.
pub fn a(n: usize) -> CartanData {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[i][i] = 2;
        if i + 1 < n {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    build(&format!("A{n}"), m, None)
}

/// `B_2` with `r = (1, 2)`.
pub fn b2() -> CartanData {
    build("B2", vec![vec![2, -2], vec![-1, 2]], None)
}

pub fn g2() -> CartanData {
    build("G2", vec![vec![2, -1], vec![-3, 2]], None)
}

pub fn f4() -> CartanData {
    build(
        "F4",
        vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, 0],
            vec![0, -2, 2, -1],
            vec![0, 0, -1, 2],
        ],
        None,
    )
}

pub fn affine_f4() -> CartanData {
    build(
        "F4(1)",
        vec![
            vec![2, -1, 0, 0, 0],
            vec![-1, 2, -1, 0, 0],
            vec![0, -1, 2, -1, 0],
            vec![0, 0, -2, 2, -1],
            vec![0, 0, 0, -1, 2],
        ],
        None,
    )
}

/// Cyclic `A_{n}^{(1)}` on `n + 1` nodes, `n >= 2`.
pub fn affine_a(n: usize) -> CartanData {
    let k = n + 1;
    let mut m = vec![vec![0; k]; k];
    for i in 0..k {
        m[i][i] = 2;
        m[i][(i + 1) % k] = -1;
        m[(i + 1) % k][i] = -1;
    }
    build(&format!("A{n}(1)"), m, None)
}

/// `A_1^{(1)}` with the symmetrizer `(2, 2)`.
pub fn affine_a1() -> CartanData {
    build("A1(1)", vec![vec![2, -2], vec![-2, 2]], Some(vec![2, 2]))
}

pub fn affine_a2_twisted() -> CartanData {
    build("A2(2)", vec![vec![2, -4], vec![-1, 2]], None)
}

/// `A_{2l}^{(2)}` for `l >= 2`, as an oriented path with both double arrows aligned.
pub fn affine_a_even_twisted(l: usize) -> CartanData {
    let k = l + 1;
    let mut m = vec![vec![0; k]; k];
    for i in 0..k {
        m[i][i] = 2;
    }
    for i in 0..l {
        let (a, b) = if i == 0 || i == l - 1 { (-2, -1) } else { (-1, -1) };
        m[i][i + 1] = a;
        m[i + 1][i] = b;
    }
    build(&format!("A{}(2)", 2 * l), m, None)
}

pub fn affine_e6_twisted() -> CartanData {
    build(
        "E6(2)",
        vec![
            vec![2, -1, 0, 0, 0],
            vec![-1, 2, -1, 0, 0],
            vec![0, -1, 2, -2, 0],
            vec![0, 0, -1, 2, -1],
            vec![0, 0, 0, -1, 2],
        ],
        None,
    )
}

/// A q-symmetrizable matrix of neither finite nor affine type.
pub fn indefinite_q_symmetrizable() -> CartanData {
    build(
        "indefinite",
        vec![
            vec![2, -2, -2, 0],
            vec![-1, 2, 0, -1],
            vec![-1, 0, 2, -1],
            vec![0, -2, -2, 2],
        ],
        None,
    )
}
