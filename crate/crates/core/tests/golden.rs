//! Worked examples, transcribed as data and compared under the
//! canonical normalization.

use diptych::cf::{reduce_to_zero, Tags};
use diptych::classify::MatrixPair;
use diptych::diptych::Diptych;
use diptych::monomial::Gen;
use diptych::rectangle::{rectangle_ab, rectangle_lm};
use diptych::serde_util::parse_rational;
use diptych::unproject::{serial_chain, serial_chain_top_down, Term, Trinomial};
use diptych::weights::weight_table;

mod common;

use common::{term, tri, TABLE_466, WORKED};

#[test]
fn worked_pentagrams_from_the_top() {
    let dip = Diptych::new(2, 4, 3).unwrap();
    let down = serial_chain_top_down(&dip).unwrap();
    assert_eq!(down.log.len(), WORKED.len());
    for (n, (pg, w)) in down.log.iter().zip(&WORKED).enumerate() {
        let entries: Vec<Term> = w.rows.iter().flat_map(|r| r.split_whitespace().map(term)).collect();
        assert_eq!(pg.matrix.entries.to_vec(), entries, "matrix of pentagram {}", n + 1);
        let computed: Vec<String> = pg.inputs.iter().chain(&pg.outputs).map(|t| t.to_string()).collect();
        let expected: Vec<String> = w.equations.iter().map(|s| tri(s).to_string()).collect();
        assert_eq!(computed, expected, "equations of pentagram {}", n + 1);
        assert!(pg.pfaffian_identity());
    }
}

#[test]
fn seventeen_equations() {
    let dip = Diptych::new(2, 4, 3).unwrap();
    let store = serial_chain(&dip).unwrap();
    let mut expected: Vec<Trinomial> = WORKED.iter().flat_map(|w| w.equations.iter().map(|s| tri(s))).collect();
    expected.sort_by_key(|t| t.lhs);
    expected.dedup();
    assert_eq!(expected.len(), 17);
    let mut computed = store.equations.clone();
    computed.sort_by_key(|t| t.lhs);
    assert_eq!(computed, expected);
    let rendered: Vec<String> = computed.iter().map(|t| t.to_string()).collect();
    assert!(rendered.contains(&"x_1x_3=x_2^4+BLM^4".to_string()));
    assert!(rendered.contains(&"x_1y_0=A^4B^7+Lx_0^4".to_string()));
}

#[test]
fn weight_table_466() {
    let dip = Diptych::new(4, 6, 6).unwrap();
    let table = weight_table(&dip).unwrap();
    let mut rows = 0;
    for line in TABLE_466.lines().filter(|l| !l.trim().is_empty()) {
        let mut it = line.split_whitespace();
        let g: Gen = it.next().unwrap().parse().unwrap();
        let w = table.weight(g);
        for (c, text) in it.enumerate() {
            assert_eq!(w.0[c], parse_rational(text).unwrap(), "{g} component {c}");
        }
        rows += 1;
    }
    assert_eq!(rows, table.weights.len());
}

#[test]
fn corner_equations_466() {
    let dip = Diptych::new(4, 6, 6).unwrap();
    let lm: Vec<String> = dip.lm.corner_equations().unwrap().iter().map(|c| format!("{}{}={}", c.lhs.0, c.lhs.1, c.polynomial)).collect();
    for want in ["x_1y_0=Lx_0^4", "x_0y_1=My_0", "x_5y_{16}=L^{505}M^{1932}", "x_6y_{15}=L^{373}M^{1427}x_5^5"] {
        assert!(lm.contains(&want.to_string()), "{want} not among {lm:?}");
    }
    let sides = dip.ab.tent_equations();
    assert!(sides.iter().any(|t| t.to_string() == "x_0x_2 = x_1^6"), "{:?}", sides.iter().map(|t| t.to_string()).collect::<Vec<_>>());
    assert!(sides.iter().any(|t| t.to_string() == "x_1x_3 = x_2^4"));
}

#[test]
fn rectangles_of_the_worked_pair() {
    let pair = MatrixPair::from_i64(7, 12, 4, 7, 24, 2);
    let ab = rectangle_ab(&pair).unwrap();
    assert_eq!(ab.x_tags, Tags::from_i64(&[0, 2, 4, 2]));
    assert_eq!(ab.y_tags, Tags::from_i64(&[-1, 2, 2, 3, 1]));
    let lm = rectangle_lm(&pair).unwrap();
    assert_eq!(lm.x_tags, Tags::from_i64(&[4, 2, 4, 0]));
    assert_eq!(lm.y_tags, Tags::from_i64(&[1, 2, 2, 3, -3]));
    assert!(ab.zero_check() && lm.zero_check());
    assert_eq!(ab.zero_word(), Tags::from_i64(&[4, 2, 1, 3, 2, 2]));
    assert_eq!(lm.zero_word().reversed(), Tags::from_i64(&[3, 2, 2, 1, 4, 2]));
    assert!(reduce_to_zero(&Tags::from_i64(&[3, 2, 2, 1, 4, 2]).0).0);
}
