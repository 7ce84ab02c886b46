use semidomain_atoms::{Error, IntPoly};

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

#[test]
fn expression_and_list_syntax() {
    assert_eq!("x^3-8x^2+4x-2".parse::<IntPoly>().unwrap(), p(&[-2, 4, -8, 1]));
    assert_eq!("[-2,4,-8,1]".parse::<IntPoly>().unwrap(), p(&[-2, 4, -8, 1]));
    assert_eq!("x^2 - 3x + 1".parse::<IntPoly>().unwrap(), p(&[1, -3, 1]));
    assert_eq!(" - x ^ 2 + x + x ".parse::<IntPoly>().unwrap(), p(&[0, 2, -1]));
    assert_eq!("3x^2 - x^2 - 2x^2".parse::<IntPoly>().unwrap(), IntPoly::zero());
    assert_eq!("[ 1 , 0 , 0 ]".parse::<IntPoly>().unwrap(), p(&[1]));
    assert_eq!("-7".parse::<IntPoly>().unwrap(), p(&[-7]));
}

#[test]
fn display_round_trips() {
    for c in [&[-2, 4, -8, 1][..], &[1, -3, 1], &[0, 0, -5], &[3], &[-1, 1]] {
        let m = p(c);
        assert_eq!(m.to_string().parse::<IntPoly>().unwrap(), m);
    }
}

#[test]
fn errors_carry_positions() {
    let pos = |s: &str| match s.parse::<IntPoly>() {
        Err(Error::Parse { position, .. }) => position,
        other => panic!("{s}: {other:?}"),
    };
    assert_eq!(pos(""), 0);
    assert_eq!(pos("x^"), 2);
    assert_eq!(pos("2x + y"), 5);
    assert_eq!(pos("x^2 + 0.5"), 7);
    assert_eq!(pos("[1, 2"), 5);
    assert!(matches!("[1/2]".parse::<IntPoly>(), Err(Error::Parse { .. })));
}
