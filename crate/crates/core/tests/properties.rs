mod common;

macro_rules! suite {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = common::$name() {
                    panic!("{e}");
                }
            }
        )*
    };
}

suite!(
    lifts_are_symmetric,
    pullbacks_satisfy_elliptic_law,
    products_keep_holomorphic_support,
    d8_middle_components_agree,
    d8_eisenstein_middle_components_agree,
    d_slash_orbit_sum_vanishes,
    gamma02_orbit_sum_is_level_one,
);
