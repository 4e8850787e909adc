"""Reference genus rows for the eight published field constellations.

Each key is a (q, n) pair and each value lists genera of maximal function
fields over GF(q^(2n)) obtained from Galois subfields of K_n.  The q values
are forced by the field sizes: GF(q^(2n)) with n odd and q in a supported
congruence class (q even or q = 1 mod 4).  The table command replays every
row through the spectrum engine and certifies membership.
"""

GOLDEN_ROWS = {
    (4, 5): (72, 200, 204, 302, 702, 1532, 3572),
    (4, 7): (140, 492, 560, 1962, 57332),
    (5, 3): (80, 160, 482),
    (5, 5): (2340, 4160, 4680, 6241, 12484),
    (25, 3): (19500,),
    (5, 7): (
        337, 338, 676, 2016, 3584, 4032, 5377, 5378, 10756, 58590, 117180,
        156241, 156242, 312484,
    ),
    (9, 7): (
        84, 210, 350, 420, 448, 658, 700, 1122, 1124, 1402, 2248, 49476,
        123690, 206150, 247380, 263872, 387562, 412300, 659682, 659684,
        824602, 1319368, 1434888, 3587220, 5978700, 7174440, 7652736,
        11239956, 11957400, 19131842, 19131844, 23914802, 38263688,
    ),
    (13, 5): (
        240, 245, 281, 490, 738, 843, 846, 983, 1476, 1692, 1970, 57840,
        59045, 67481, 118090, 177138, 202443, 202446, 236183, 354276,
        404892, 472370, 636480, 649740, 742561, 1299480, 1949223, 2227683,
        2227686, 2598963, 3898446, 4455372, 5197930,
    ),
}
