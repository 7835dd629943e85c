"""Orthogonal scaling-filter tables (synthesis lowpass, DC gain sqrt(2)).

Generated by tools/make_wavelet_tables.py -- do not edit by hand.
Each entry is the reconstruction lowpass filter h; the analysis pair and
the highpass filters are derived from h by the quadrature-mirror relation.
"""

SCALING_FILTERS = {
    "sym4": (
        0.03222310060405141,
        -0.012603967262031389,
        -0.09921954357663337,
        0.2978577956053064,
        0.8037387518051321,
        0.4976186676327748,
        -0.029635527646002604,
        -0.07576571478950223,
    ),
    "coif5": (
        -9.604013567788094e-08,
        -1.6238000276513728e-07,
        2.0612208670613598e-06,
        3.7007286844089796e-06,
        -2.127022528608243e-05,
        -4.12198688960217e-05,
        0.0001403563427829177,
        0.00030185798412877635,
        -0.0006375589805922452,
        -0.0016616275055967382,
        0.0024315757096663856,
        0.006761520841572855,
        -0.00915950841878815,
        -0.019758392771746493,
        0.03267480236802602,
        0.04128753169725211,
        -0.10556315650511325,
        -0.06203775187085241,
        0.43798231303479335,
        0.7742936218062378,
        0.42157126132376693,
        -0.052046668565609494,
        -0.09192158492853589,
        0.028169742969207726,
        0.023408320932554457,
        -0.010131584263319272,
        -0.004159312361895254,
        0.0021782942316128065,
        0.00035857771443707374,
        -0.0002120818461257106,
    ),
    "db10": (
        0.02667005790058969,
        0.18817680007784943,
        0.5272011889319419,
        0.6884590394535389,
        0.2811723436601972,
        -0.249846424327484,
        -0.19594627437717307,
        0.12736934033590158,
        0.09305736460345874,
        -0.07139414716643738,
        -0.0294575368218205,
        0.033212674059347407,
        0.0036065535669360205,
        -0.010733175483328583,
        0.001395351747057691,
        0.0019924052951835873,
        -0.0006858566949602955,
        -0.00011646685512892262,
        9.358867032005889e-05,
        -1.3264202894572307e-05,
    ),
    "fk14": (
        0.2602862430146228,
        0.686741760784177,
        0.6120624183345977,
        0.05089893704007692,
        -0.24545155138791055,
        -0.048043901106902515,
        0.12353541431372982,
        0.02248132322271977,
        -0.06376112325886588,
        -0.005430666392802547,
        0.029940718280215668,
        -0.0031433493587959462,
        -0.009505338109842136,
        0.003602676998074809,
    ),
}
