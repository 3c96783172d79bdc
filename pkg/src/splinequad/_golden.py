"""Reference rules used by the table-reproduction checks.

Entries printed as exact rationals or surds are evaluated here at load
time so no decimal transcription error can creep in; rules only published
to ten digits carry a correspondingly looser tolerance.  Pairs are listed
in ascending node order and cover the leading pairs of each rule (all of
them except for the symmetric reference, whose mirror half is checked by
the symmetry entry instead).
"""

from math import sqrt

_S6 = sqrt(6.0)
_S10 = sqrt(10.0)
_S105 = sqrt(105.0)
_S174 = sqrt(174.0)
_S8061 = sqrt(8061.0)
_S209770 = sqrt(209770.0)

TABLES = {
    1: {
        "continuity": 0,
        "degree": 4,
        "knots": (0.0, 1.0, 2.0, 3.0, 4.0),
        "middle_index": 3,
        "omega_policy": "node-left",
        "tolerance": 1e-12,
        "omega": 7.0 / 5.0,
        "dirac": {
            "l1": (0.0,),
            "l2": (2.0 / 9.0,),
            "l3": (4.0 / 17.0,),
            "r3": (2.0 / 9.0,),
            "r4": (0.0,),
        },
        "pairs": [
            (2.0 / 5.0 - _S6 / 10.0, 4.0 / 9.0 - _S6 / 36.0),
            (2.0 / 5.0 + _S6 / 10.0, 4.0 / 9.0 + _S6 / 36.0),
            (34.0 / 25.0 - _S174 / 50.0, 76.0 / 153.0 - 21.0 * _S174 / 5916.0),
            (34.0 / 25.0 + _S174 / 50.0, 76.0 / 153.0 + 21.0 * _S174 / 5916.0),
            (2.0, 4.0 / 17.0),
            (66.0 / 25.0 - _S174 / 50.0, 76.0 / 153.0 + 7.0 * _S174 / 1972.0),
            (66.0 / 25.0 + _S174 / 50.0, 76.0 / 153.0 - 7.0 * _S174 / 1972.0),
            (18.0 / 5.0 - _S6 / 10.0, 4.0 / 9.0 + _S6 / 36.0),
            (18.0 / 5.0 + _S6 / 10.0, 4.0 / 9.0 - _S6 / 36.0),
        ],
        "symmetric": False,
    },
    2: {
        "continuity": 0,
        "degree": 6,
        "knots": (0.0, 1.0, 2.0, 3.0, 4.0),
        "middle_index": 1,
        "omega_policy": "node-left",
        "tolerance": 1e-9,
        "omega": 559.0 / 433.0,
        "dirac": {
            "l1": (0.0,),
            "r1": (63.0 / 488.0,),
            "r2": (4.0 / 31.0,),
            "r3": (1.0 / 8.0,),
            "r4": (0.0,),
        },
        "pairs": [
            (0.0, 0.0645497136),
            (0.2193254677, 0.3397035713),
            (0.6102277570, 0.4016942462),
            (0.9470881476, 0.2586016489),
            (1.2193236472, 0.3397007352),
            (1.6102225842, 0.4016906147),
            (1.9470771451, 0.2585755986),
            (2.2192108353, 0.3395249876),
            (2.6099020423, 0.4014656053),
            (2.9463973263, 0.2569932780),
            (3.2123405382, 0.3288443199),
            (3.5905331355, 0.3881934688),
            (3.9114120404, 0.2204622111),
        ],
        "symmetric": False,
    },
    3: {
        "continuity": 0,
        "degree": 4,
        "knots": (0.0, 1.0, 3.0, 7.0, 15.0),
        "middle_index": 4,
        "omega_policy": "node-left",
        "tolerance": 1e-12,
        "omega": 1.0,
        "dirac": {
            "l1": (0.0,),
            "l2": (1.0 / 9.0,),
            "l3": (3.0 / 26.0,),
            "l4": (79.0 / 684.0,),
            "r4": (0.0,),
        },
        "pairs": [
            (2.0 / 5.0 - _S6 / 10.0, 4.0 / 9.0 - _S6 / 36.0),
            (2.0 / 5.0 + _S6 / 10.0, 4.0 / 9.0 + _S6 / 36.0),
            (7.0 / 4.0 - _S105 / 20.0, 110.0 / 117.0 - 10.0 * _S105 / 819.0),
            (7.0 / 4.0 + _S105 / 20.0, 110.0 / 117.0 + 10.0 * _S105 / 819.0),
            (787.0 / 175.0 - 2.0 * _S8061 / 175.0,
             4189.0 / 2223.0 - 16522.0 * _S8061 / 5973201.0),
            (787.0 / 175.0 + 2.0 * _S8061 / 175.0,
             4189.0 / 2223.0 + 16522.0 * _S8061 / 5973201.0),
            (7.0, 77.0 / 57.0),
            (59.0 / 5.0 - 4.0 * _S6 / 5.0, 32.0 / 9.0 + 2.0 * _S6 / 9.0),
            (59.0 / 5.0 + 4.0 * _S6 / 5.0, 32.0 / 9.0 - 2.0 * _S6 / 9.0),
        ],
        "symmetric": False,
    },
    4: {
        "continuity": 1,
        "degree": 5,
        "knots": (0.0, 1.0, 2.0, 3.0, 4.0, 5.0),
        "middle_index": 3,
        "omega_policy": "zero",
        "tolerance": 1e-12,
        "omega": 0.0,
        "dirac": {
            "l1": (0.0, 0.0),
            "l2": (23.0 / 108.0, 1.0 / 432.0),
            "l3": (593446.0 / 2544723.0, 23.0 / 8289.0),
            "r3": (593446.0 / 2544723.0, 23.0 / 8289.0),
            "r5": (0.0, 0.0),
        },
        # the published source drops the leading digit of the third pair's
        # rational weight part (997... printed as 97...); the value below is
        # the corrected one, cross-checked symbolically and by the weight sum
        "pairs": [
            (1.0 / 3.0 - _S10 / 15.0, 85.0 / 216.0 - 25.0 * _S10 / 864.0),
            (1.0 / 3.0 + _S10 / 15.0, 85.0 / 216.0 + 25.0 * _S10 / 864.0),
            (465.0 / 371.0 - _S209770 / 1855.0,
             9972835.0 / 20357784.0 - 53657125.0 * _S209770 / 569393646624.0),
            (465.0 / 371.0 + _S209770 / 1855.0,
             9972835.0 / 20357784.0 + 53657125.0 * _S209770 / 569393646624.0),
            (5.0 / 2.0 - sqrt(11868463.0) / (2.0 * sqrt(11870305.0)),
             28180828158605.0 / 60403901541498.0),
            (5.0 / 2.0, 18989540.0 / 35605389.0),
        ],
        "symmetric": True,
    },
    5: {
        "continuity": 1,
        "degree": 7,
        "knots": (0.0, 1.0, 3.0, 7.0, 9.0),
        "middle_index": 3,
        "omega_policy": "zero",
        "tolerance": 1e-9,
        "omega": 0.0,
        "dirac": {
            "l1": (0.0, 0.0),
            "l2": (13.0 / 200.0, 1.0 / 4800.0),
            "l3": (223758915.0 / 3305007602.0, 147.0 / 650416.0),
            "r3": (13.0 / 200.0, 1.0 / 4800.0),
            "r4": (0.0, 0.0),
        },
        "pairs": [
            (0.0729940240, 0.1828570141),
            (0.3470037660, 0.3429757724),
            (0.7050022098, 0.3441672133),
            (1.0560478113, 0.4256711849),
            (1.6388513157, 0.7163358746),
            (2.3854005088, 0.7171809582),
            (3.1038729543, 0.8510463517),
            (4.2595711727, 1.4178548432),
            (5.7365650016, 1.4177054729),
            (6.8904874142, 0.8442053143),
            (7.5899955802, 0.6883344267),
            (8.3059924679, 0.6859515449),
            (8.8540119518, 0.3657140283),
        ],
        "symmetric": False,
    },
}
