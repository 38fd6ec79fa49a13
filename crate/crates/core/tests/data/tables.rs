//! Reference optimal-k tables on the default grid
//! (theta = 10^-3..10^3 by rows, rho = 0.1, 0.5, 1-10^-1..1-10^-6 by columns).

pub const K_OPT: [[u64; 8]; 7] = [
    [1, 1, 1, 4, 18, 84, 391, 1817],
    [1, 1, 2, 8, 39, 182, 843, 3915],
    [1, 1, 4, 18, 84, 391, 1817, 8434],
    [1, 2, 8, 39, 182, 843, 3915, 18171],
    [2, 4, 17, 83, 390, 1816, 8433, 39148],
    [3, 7, 32, 172, 833, 3905, 18161, 84333],
    [4, 10, 51, 327, 1729, 8337, 39049, 181612],
];

pub const EFF_OPT: [[&str; 8]; 7] = [
    ["1.00", "1.00", "1.00", "1.00", "1.00", "1.00", "1.00", "1.00"],
    ["1.00", "1.00", "1.00", "1.01", "1.01", "1.01", "1.01", "1.01"],
    ["1.00", "1.00", "1.06", "1.09", "1.10", "1.10", "1.10", "1.10"],
    ["1.00", "1.20", "1.68", "1.93", "1.98", "2.00", "2.00", "2.00"],
    ["1.10", "2.08", "5.53", "9.29", "10.59", "10.91", "10.98", "11.00"],
    ["1.20", "2.79", "13.57", "51.61", "85.29", "97.25", "100.17", "100.82"],
    ["1.22", "2.97", "17.93", "139.29", "512.38", "845.38", "963.79", "992.79"],
];

pub const K_OK: [[u64; 8]; 7] = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 2, 2, 2, 2, 2, 2],
    [1, 2, 5, 11, 17, 19, 19, 19],
    [2, 4, 12, 45, 109, 164, 184, 189],
    [2, 5, 22, 118, 442, 1085, 1632, 1835],
    [2, 6, 31, 228, 1182, 4415, 10846, 16311],
];
