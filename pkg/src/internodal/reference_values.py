"""Published beta-approximation parameters, kept as a regression fixture.

Values are (alpha, beta) for the distance normalized by ``r1 + r2`` with
``(r1, r2) = (1, 2)``, rounded to three decimals at the source.

Fixture version 1. Editing these numbers is a breaking change to ``validate``.
"""

FIXTURE_VERSION = 1
RADII = (1.0, 2.0)
TOLERANCE = 0.01

BETA_PARAMS = {
    (2, "s1"): (2.753, 3.080),
    (2, "s2"): (2.333, 3.366),
    (2, "s3"): (2.550, 3.960),
    (2, "s4"): (2.410, 2.552),
    (3, "s1"): (4.422, 3.898),
    (3, "s2"): (3.495, 4.166),
    (3, "s3"): (3.846, 5.030),
    (3, "s4"): (3.724, 3.058),
}
