"""Reference values computed independently with mpmath at 150 digits
(radical formula for alpha, float-free continued fraction, direct evaluation
of ||mu q|| - M ||kappa q||)."""

ALPHA_40 = "1.839286755214161132551852564653286600424"

KAPPA_PREFIX = [3, 1, 3, 1, 1, 14, 1, 3, 3, 6, 1, 13, 3, 4, 2, 1, 1, 2, 3, 3, 2, 2, 1, 2, 5, 1, 1, 39, 2, 1]
Q98 = 10439083718875559984715310681234336679649552673602845
P98 = 39444948689252707738489528190760067813905266021850462
A_M = 44  # max partial quotient a_0..a_95, the first q above 10^51 being q_95

# round 1, d1 -> (epsilon, threshold) at q_98
ROUND1 = {
    1: ("0.0376316021926", "55.40641102"),
    2: ("0.321484293962", "54.47480397"),
    3: ("0.0022751863698", "56.62494676"),
    4: ("0.328500555363", "54.46542763"),
    5: ("0.180058630671", "54.72654979"),
    6: ("0.286127878139", "54.52540356"),
    7: ("0.0157568517975", "55.78449428"),
    8: ("0.0446478635932", "55.33216305"),
}
LEGENDRE_ROUND1 = "54.62605918"
LEGENDRE_ROUND2 = "54.45765475"

ROUND2_EPS_MIN = "6.0412355e-05"
ROUND2_SAMPLE = {"case": (2, 5, 3), "index": 98, "eps": "0.111106968", "threshold": "54.76781801"}

# case (1,2,1,58): Y/9 = 10^58 + 1/9, so mu is within 10^-59 of 58 kappa
ROUND3_WORST = {"case": (1, 2, 1, 58), "index": 106, "eps": "5.720633083e-5", "threshold": "226.6012753"}
ROUND3_EPS_MIN = "2.0354919e-06"

# first terms of OEIS A001644
TRIB_LUCAS_HEAD = [3, 1, 3, 7, 11, 21, 39, 71, 131, 241, 443, 815, 1499, 2757, 5071, 9327, 17155, 31553]
