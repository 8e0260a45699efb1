// Reference values computed with mpmath at 40 significant digits:
// brute-force interpolation series for the kernels, direct lattice sums
// and quadrature elsewhere.  Produced by reference.py; regenerate rather
// than edit.

pub const GAMMA: &[(f64, f64)] = &[
    (0.25, 3.6256099082219083119),
    (0.5, 1.7724538509055160273),
    (1.5, 0.88622692545275801365),
    (3.7, 4.1706517837966031654),
    (-0.5, -3.5449077018110320546),
    (-1.3, 3.3283470067886097069),
    (10.1, 454760.75144158595087),
    (170.5, 5.5620924145599996107e+305),
];

pub const ZETA: &[(f64, f64)] = &[
    (0.5, -1.4603545088095868129),
    (1.5, 2.6123753486854883433),
    (-0.5, -0.20788622497735456602),
    (0.25, -0.81327840526189165652),
    (1.75, 1.9623200994513419902),
    (0.75, -3.4412853869452228944),
    (1.25, 4.5951118258429433807),
    (-0.25, -0.32045126422857728279),
    (0.0, -0.5),
    (1.999, 1.6458726107436847931),
];

pub const HURWITZ: &[(f64, f64, f64)] = &[
    (0.5, 0.3, 0.011152780309969810363),
    (1.5, 2.0, 1.6123753486854883433),
    (-0.5, 0.7, -0.02093266381616906529),
    (-1.5, 0.25, -0.015109295630837673623),
    (1.25, 0.1, 22.210205752388449734),
    (-2.5, 1.5, -0.18378802955106200582),
];

pub const DEFECT_MINORANT: &[(f64, f64)] = &[
    (0.000001, 0.000000083333333333330902778),
    (0.001, 0.000083333330902777841849),
    (0.5, 0.041364836697999639792),
    (1.0, 0.080965248665056280508),
    (2.0, 0.14908187176067845487),
    (3.0, 0.19702422607144208194),
    (30.0, 0.066666054862025662958),
];

pub const DEFECT_MAJORANT: &[(f64, f64)] = &[
    (0.000001, 0.00000016666666666666388889),
    (0.001, 0.00016666666388888895503),
    (0.5, 0.082988165073596568262),
    (1.0, 0.16395341373865284877),
    (2.0, 0.31303528549933130364),
    (3.0, 0.43812472631584523728),
    (30.0, 0.93333333333352048579),
];

pub const KERNEL_L: &[(f64, f64, f64)] = &[
    (0.1, 0.3, 0.96827472788324764705),
    (1.0, 0.1, 0.79050314727228501423),
    (1.0, 2.7, 0.06648097507811384111),
    (10.0, -1.2, -0.0026873890201369454604),
    (3.0, 7.3, -0.0002020616375796016677),
    (0.5, -15.25, 0.0004702306907305633484),
];

pub const KERNEL_M: &[(f64, f64, f64)] = &[
    (0.1, 0.3, 0.98379904984172765099),
    (1.0, 0.1, 0.98461463223527891592),
    (1.0, 2.7, 0.070071840509315293938),
    (10.0, -1.2, 0.024277272177150572142),
    (3.0, 7.3, 0.00096137917191929656086),
    (0.5, -15.25, 0.00052407122912549337675),
];

pub const PERIODIC_P: &[(f64, f64, f64)] = &[
    (0.2, 0.0, 0.033311132253989610145),
    (0.2, 0.25, -0.0041654517091607196154),
    (2.0, 0.6, -0.13200670562945854769),
    (7.0, 0.5, -0.22526439570512960923),
    (1.0, 0.1, 0.074615450266086938424),
];

pub const F_POWER: &[(f64, f64, f64)] = &[
    (0.5, 0.3, 1.4635893366873160628),
    (0.5, 2.0, -0.51913971359001577609),
    (1.5, 0.3, 1.6032817892553328006),
    (1.5, 5.0, -4.3817468934009899721),
    (0.25, 3.0, -0.6878370100810587104),
];

