#![allow(dead_code)]

/// Nonzero brackets of the dimension-15 law at (4,9,15) with parameters
/// a_6, g_5, b_1_5, b_2_4, b_3_3, b_4_2 and all others zero, excluding the
/// chain [e_1, e_h] = e_{h-1}. Entries are (i, j, h, coefficient of e_h).
pub const DIM15_TABLE: &[(usize, usize, usize, &str)] = &[
    (4, 15, 2, "g_5"),
    (6, 15, 4, "g_5 + 2*b_1_5 + b_2_4"),
    (6, 13, 2, "b_2_4"),
    (7, 13, 3, "b_2_4 + b_3_3"),
    (5, 14, 2, "b_1_5"),
    (7, 15, 5, "g_5 + 3*b_1_5 + 3*b_2_4 + b_3_3"),
    (5, 15, 3, "g_5 + b_1_5"),
    (8, 13, 4, "b_2_4 + 2*b_3_3 + b_4_2"),
    (6, 14, 3, "b_1_5 + b_2_4"),
    (8, 14, 5, "b_1_5 + 3*b_2_4 + 3*b_3_3 + b_4_2"),
    (7, 12, 2, "b_3_3"),
    (8, 15, 6, "g_5 + 4*b_1_5 + 6*b_2_4 + 4*b_3_3 + b_4_2"),
    (7, 14, 4, "b_1_5 + 2*b_2_4 + b_3_3"),
    (9, 12, 4, "b_3_3 + 2*b_4_2 + a_6"),
    (8, 11, 2, "b_4_2"),
    (9, 13, 5, "b_2_4 + 3*b_3_3 + 3*b_4_2 + a_6"),
    (8, 12, 3, "b_3_3 + b_4_2"),
    (9, 14, 6, "b_1_5 + 4*b_2_4 + 6*b_3_3 + 4*b_4_2 + a_6"),
    (9, 10, 2, "a_6"),
    (9, 15, 7, "g_5 + 5*b_1_5 + 10*b_2_4 + 10*b_3_3 + 5*b_4_2 + a_6"),
    (9, 11, 3, "b_4_2 + a_6"),
    (10, 12, 5, "b_3_3 + 3*b_4_2 + 2*a_6"),
    (10, 11, 4, "b_4_2 + a_6"),
    (10, 13, 6, "b_2_4 + 4*b_3_3 + 6*b_4_2 + 3*a_6"),
    (10, 14, 7, "b_1_5 + 5*b_2_4 + 10*b_3_3 + 10*b_4_2 + 4*a_6"),
    (10, 15, 8, "g_5 + 6*b_1_5 + 15*b_2_4 + 20*b_3_3 + 15*b_4_2 + 5*a_6"),
    (11, 12, 6, "b_3_3 + 3*b_4_2 + 2*a_6"),
    (11, 13, 7, "b_2_4 + 5*b_3_3 + 9*b_4_2 + 5*a_6"),
    (11, 14, 8, "b_1_5 + 6*b_2_4 + 15*b_3_3 + 19*b_4_2 + 9*a_6"),
    (11, 15, 9, "g_5 + 7*b_1_5 + 21*b_2_4 + 35*b_3_3 + 34*b_4_2 + 14*a_6"),
    (12, 13, 8, "b_2_4 + 5*b_3_3 + 9*b_4_2 + 5*a_6"),
    (12, 14, 9, "b_1_5 + 7*b_2_4 + 20*b_3_3 + 28*b_4_2 + 14*a_6"),
    (12, 15, 10, "g_5 + 8*b_1_5 + 28*b_2_4 + 55*b_3_3 + 62*b_4_2 + 28*a_6"),
    (13, 14, 10, "b_1_5 + 7*b_2_4 + 20*b_3_3 + 28*b_4_2 + 14*a_6"),
    (13, 15, 11, "g_5 + 9*b_1_5 + 35*b_2_4 + 75*b_3_3 + 90*b_4_2 + 42*a_6"),
    (14, 15, 12, "g_5 + 9*b_1_5 + 35*b_2_4 + 75*b_3_3 + 90*b_4_2 + 42*a_6"),
];
