"""Frozen reference values minted by tools/mint_frozen_values.py.

Every entry was produced by a naive independent code path before the
main engines were trusted; regenerate only by rerunning the mint
script, never by copying main-engine output."""

FROZEN = {'alpha_P1': '1/2',
 'alpha_P1xP1': '1/2',
 'alpha_P2': '1/3',
 'cubic_p5_e1_a': 16,
 'cubic_p5_e1_b': [1, 4, 6, 4, 1],
 'cubic_p5_e1_m': 1,
 'cubic_p5_e2_a': 1891,
 'cubic_p5_e2_b': [1,
                   4,
                   10,
                   19,
                   31,
                   46,
                   64,
                   85,
                   109,
                   136,
                   162,
                   183,
                   191,
                   183,
                   162,
                   136,
                   109,
                   85,
                   64,
                   46,
                   31,
                   19,
                   10,
                   4,
                   1],
 'cubic_p5_e2_m': 9,
 'cubic_p7_e1_m': 2,
 'elliptic_cone_p5_split': False,
 'elliptic_cone_p7_split': True,
 'quadric_p3_e1_a': 19,
 'quadric_p3_e1_b': [1, 4, 9, 4, 1],
 'quadric_p3_e1_m': 2,
 'volume_P1': '2',
 'volume_P1xP1': '8',
 'volume_P2': '9'}
