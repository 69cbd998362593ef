"""Published per-run results and summary cells used to check the statistics code.

Raw values are the eight repetitions of each (size, optimizer, metric) cell.
Published cells are the reported ``(mean, std)`` strings, kept as text so the
printed precision is preserved.
"""
from __future__ import annotations

METRICS = ("wiener", "mu", "e_p", "t_r", "lambda2")
SIZES = (20, 30, 40, 50, 60)
KINDS = ("ABC", "DE", "GSA")

RAW: dict[tuple[int, str, str], tuple[float, ...]] = {
    (20, 'ABC', 'wiener'): (20.4779, 20.8481, 22.2951, 20.5103, 20.0171, 20.8472, 21.0671, 20.4845),
    (20, 'ABC', 'mu'): (7.5188, 7.8295, 9.0440, 7.5460, 7.1320, 7.8288, 8.0133, 7.5244),
    (20, 'ABC', 'e_p'): (0.5171, 0.4927, 0.3842, 0.5150, 0.5456, 0.4928, 0.4777, 0.5166),
    (20, 'ABC', 't_r'): (4.5307, 4.1338, 2.8554, 4.4947, 5.0730, 4.1346, 3.9138, 4.5233),
    (20, 'ABC', 'lambda2'): (0.5978, 0.5958, 0.5833, 0.5968, 0.5985, 0.5981, 0.5995, 0.5973),
    (20, 'DE', 'wiener'): (20.0751, 19.8563, 19.3830, 20.9926, 20.2172, 20.0487, 19.4318, 20.0423),
    (20, 'DE', 'mu'): (7.1807, 6.9971, 6.5998, 7.9508, 7.3000, 7.1586, 6.6408, 7.1532),
    (20, 'DE', 'e_p'): (0.5421, 0.5551, 0.5817, 0.4828, 0.5334, 0.5437, 0.5791, 0.5441),
    (20, 'DE', 't_r'): (5.0016, 5.2759, 5.9186, 3.9874, 4.8306, 5.0340, 5.8490, 5.0418),
    (20, 'DE', 'lambda2'): (0.5871, 0.5922, 0.5833, 0.5763, 0.5912, 0.5834, 0.5865, 0.5891),
    (20, 'GSA', 'wiener'): (26.5846, 26.3823, 24.2251, 24.7767, 26.5787, 26.1230, 24.9617, 26.4071),
    (20, 'GSA', 'mu'): (12.6443, 12.4745, 10.6639, 11.1269, 12.6393, 12.2568, 11.2821, 12.4953),
    (20, 'GSA', 'e_p'): (0.0910, 0.0624, 0.0020, 0.0410, 0.0901, 0.0268, 0.0195, 0.0659),
    (20, 'GSA', 't_r'): (0.6799, 0.7475, 1.6517, 1.3842, 0.6818, 0.8379, 1.3007, 0.7391),
    (20, 'GSA', 'lambda2'): (0.5621, 0.5982, 0.5952, 0.5122, 0.5743, 0.5908, 0.5887, 0.5648),
    (30, 'ABC', 'wiener'): (47.1533, 49.4577, 48.9101, 46.0614, 47.8593, 46.2467, 46.8965, 45.8660),
    (30, 'ABC', 'mu'): (7.3050, 8.1498, 7.9490, 6.9047, 7.5639, 6.9727, 7.2109, 6.8331),
    (30, 'ABC', 'e_p'): (0.5331, 0.4662, 0.4830, 0.5614, 0.5136, 0.5568, 0.5399, 0.5663),
    (30, 'ABC', 't_r'): (7.9923, 6.3928, 6.7414, 8.8858, 7.4638, 8.7273, 8.1938, 9.0563),
    (30, 'ABC', 'lambda2'): (0.5746, 0.5628, 0.5750, 0.5673, 0.5680, 0.5724, 0.5636, 0.5758),
    (30, 'DE', 'wiener'): (38.3427, 37.4194, 38.1365, 36.0939, 34.2659, 38.4854, 39.7146, 36.2412),
    (30, 'DE', 'mu'): (4.0751, 3.7366, 3.9995, 3.2507, 2.5805, 4.1274, 4.5780, 3.3047),
    (30, 'DE', 'e_p'): (0.7117, 0.7247, 0.7147, 0.7417, 0.7625, 0.7096, 0.6907, 0.7399),
    (30, 'DE', 't_r'): (19.1790, 21.1123, 19.5928, 24.2843, 29.5895, 18.8985, 16.6617, 23.9061),
    (30, 'DE', 'lambda2'): (0.5691, 0.5737, 0.5695, 0.5741, 0.5590, 0.5662, 0.5734, 0.5698),
    (30, 'GSA', 'wiener'): (52.2730, 53.1068, 56.8519, 56.0118, 52.8760, 53.5062, 55.4777, 54.8648),
    (30, 'GSA', 'mu'): (9.1819, 9.4875, 10.8605, 10.5525, 9.4029, 9.6340, 10.3567, 10.1320),
    (30, 'GSA', 'e_p'): (0.3705, 0.3389, 0.1766, 0.2161, 0.3478, 0.3232, 0.2402, 0.2670),
    (30, 'GSA', 't_r'): (4.8574, 4.4736, 3.0590, 3.3377, 4.5770, 4.2997, 3.5256, 3.7521),
    (30, 'GSA', 'lambda2'): (0.5041, 0.5858, 0.5963, 0.5930, 0.5314, 0.5306, 0.5724, 0.5934),
    (40, 'ABC', 'wiener'): (66.5124, 72.8250, 66.6371, 67.4001, 68.5336, 66.9232, 68.9392, 67.8106),
    (40, 'ABC', 'mu'): (3.5099, 4.8005, 3.5354, 3.6914, 3.9231, 3.5939, 4.0060, 3.7753),
    (40, 'ABC', 'e_p'): (0.7329, 0.6807, 0.7320, 0.7263, 0.7176, 0.7299, 0.7144, 0.7232),
    (40, 'ABC', 't_r'): (30.5445, 21.3943, 30.3250, 29.0207, 27.1999, 29.8281, 26.5805, 28.3456),
    (40, 'ABC', 'lambda2'): (0.5626, 0.5785, 0.5635, 0.5682, 0.5734, 0.5613, 0.5753, 0.5682),
    (40, 'DE', 'wiener'): (66.5340, 64.4359, 61.4971, 62.5587, 63.0498, 62.5162, 60.2059, 70.5927),
    (40, 'DE', 'mu'): (3.5143, 3.0854, 2.4845, 2.7016, 2.8020, 2.6929, 2.2205, 4.3441),
    (40, 'DE', 'e_p'): (0.7327, 0.7472, 0.7652, 0.7590, 0.7560, 0.7592, 0.7724, 0.7007),
    (40, 'DE', 't_r'): (30.5063, 34.4838, 41.1096, 38.5585, 37.4410, 38.6570, 44.4823, 24.2163),
    (40, 'DE', 'lambda2'): (0.5435, 0.5583, 0.5411, 0.5621, 0.5574, 0.5731, 0.5518, 0.5882),
    (40, 'GSA', 'wiener'): (75.6850, 76.7186, 74.3766, 76.7740, 85.4740, 85.4565, 76.2813, 80.5751),
    (40, 'GSA', 'mu'): (5.3852, 5.5965, 5.1177, 5.6079, 7.3865, 7.3830, 5.5071, 6.3850),
    (40, 'GSA', 'e_p'): (0.6522, 0.6410, 0.6656, 0.6404, 0.5270, 0.5273, 0.6458, 0.5954),
    (40, 'GSA', 't_r'): (18.3052, 17.3143, 19.6516, 17.2629, 10.9339, 10.9438, 17.7260, 14.1080),
    (40, 'GSA', 'lambda2'): (0.5810, 0.5241, 0.4720, 0.5104, 0.5144, 0.5568, 0.5671, 0.5910),
    (50, 'ABC', 'wiener'): (91.0270, 94.8536, 91.5182, 96.3813, 97.2481, 92.3952, 93.7660, 94.4354),
    (50, 'ABC', 'mu'): (1.7123, 2.2104, 1.7762, 2.4093, 2.5221, 1.8904, 2.0688, 2.1560),
    (50, 'ABC', 'e_p'): (0.7851, 0.7727, 0.7836, 0.7673, 0.7642, 0.7809, 0.7764, 0.7741),
    (50, 'ABC', 't_r'): (65.2941, 56.1513, 64.0273, 52.9281, 51.1961, 61.8367, 58.5872, 57.0735),
    (50, 'ABC', 'lambda2'): (0.5776, 0.5638, 0.5761, 0.5653, 0.5510, 0.5649, 0.5643, 0.5762),
    (50, 'DE', 'wiener'): (90.4224, 89.7886, 85.7999, 87.5349, 90.0820, 88.0340, 87.9512, 85.4375),
    (50, 'DE', 'mu'): (1.6335, 1.5510, 1.0318, 1.2577, 1.5892, 1.3226, 1.3118, 0.9846),
    (50, 'DE', 'e_p'): (0.7870, 0.7889, 0.7999, 0.7953, 0.7880, 0.7939, 0.7941, 0.8008),
    (50, 'DE', 't_r'): (66.8945, 68.6220, 80.7908, 75.2074, 67.8159, 73.6867, 73.9365, 82.0185),
    (50, 'DE', 'lambda2'): (0.5352, 0.5035, 0.5132, 0.5435, 0.5412, 0.5239, 0.5471, 0.5235),
    (50, 'GSA', 'wiener'): (105.1462, 113.0629, 108.1924, 115.8275, 110.3703, 100.5047, 109.0259, 109.4644),
    (50, 'GSA', 'mu'): (3.5503, 4.5809, 3.9468, 4.9408, 4.2303, 2.9461, 4.0553, 4.1124),
    (50, 'GSA', 'e_p'): (0.7314, 0.6905, 0.7167, 0.6741, 0.7054, 0.7516, 0.7125, 0.7102),
    (50, 'GSA', 't_r'): (38.1256, 28.7571, 34.1548, 26.1324, 31.6085, 45.2562, 33.1534, 32.6400),
    (50, 'GSA', 'lambda2'): (0.5283, 0.5304, 0.5470, 0.5490, 0.5269, 0.5208, 0.5992, 0.5328),
    (60, 'ABC', 'wiener'): (135.6958, 133.2450, 131.7722, 137.7684, 134.7591, 133.6464, 134.4074, 136.0973),
    (60, 'ABC', 'mu'): (2.0615, 1.8407, 1.7080, 2.2483, 1.9771, 1.8769, 1.9455, 2.0977),
    (60, 'ABC', 'e_p'): (0.7766, 0.7821, 0.7852, 0.7717, 0.7787, 0.7812, 0.7795, 0.7757),
    (60, 'ABC', 't_r'): (70.7615, 75.6364, 78.7573, 66.9271, 72.5796, 74.8114, 73.2763, 69.9989),
    (60, 'ABC', 'lambda2'): (0.5542, 0.5352, 0.5486, 0.5671, 0.5724, 0.5596, 0.5371, 0.5519),
    (60, 'DE', 'wiener'): (119.8184, 122.0953, 119.5098, 128.1753, 123.5144, 133.0943, 125.5230, 120.9982),
    (60, 'DE', 'mu'): (0.6311, 0.8362, 0.6033, 1.3840, 0.9640, 1.8272, 1.1450, 0.7374),
    (60, 'DE', 'e_p'): (0.8075, 0.8037, 0.8080, 0.7926, 0.8012, 0.7824, 0.7976, 0.8056),
    (60, 'DE', 't_r'): (110.6521, 103.5356, 111.6609, 87.0439, 99.3756, 75.9489, 93.8222, 106.8941),
    (60, 'DE', 'lambda2'): (0.5003, 0.5380, 0.5437, 0.5605, 0.5434, 0.5051, 0.5418, 0.5105),
    (60, 'GSA', 'wiener'): (150.9769, 135.9783, 154.0231, 146.3812, 153.6548, 146.3354, 152.3104, 157.8413),
    (60, 'GSA', 'mu'): (3.4383, 2.0870, 3.7128, 3.0243, 3.6796, 3.0201, 3.5584, 4.0568),
    (60, 'GSA', 'e_p'): (0.7354, 0.7759, 0.7255, 0.7491, 0.7268, 0.7492, 0.7311, 0.7124),
    (60, 'GSA', 't_r'): (47.5134, 70.2239, 44.0275, 53.4038, 44.4326, 53.4667, 45.9491, 40.0714),
    (60, 'GSA', 'lambda2'): (0.5091, 0.5757, 0.5145, 0.5246, 0.5433, 0.5919, 0.5775, 0.5997),
}

PUBLISHED: dict[tuple[int, str, str], tuple[str, str]] = {
    (20, 'ABC', 'wiener'): ('20.8184', '0.6770'),
    (30, 'ABC', 'wiener'): ('47.3064', '1.3334'),
    (40, 'ABC', 'wiener'): ('68.1976', '2.0619'),
    (20, 'ABC', 'mu'): ('7.8046', '0.5682'),
    (30, 'ABC', 'mu'): ('7.3611', '0.4888'),
    (40, 'ABC', 'mu'): ('3.8544', '0.4216'),
    (20, 'ABC', 'e_p'): ('0.4927', '0.0485'),
    (30, 'ABC', 'e_p'): ('0.5275', '0.0371'),
    (40, 'ABC', 'e_p'): ('0.7196', '0.0171'),
    (20, 'ABC', 't_r'): ('4.2074', '0.6504'),
    (30, 'ABC', 't_r'): ('7.9317', '0.9917'),
    (40, 'ABC', 't_r'): ('27.9048', '2.9905'),
    (20, 'ABC', 'lambda2'): ('0.5959', '0.0052'),
    (30, 'ABC', 'lambda2'): ('0.5699', '0.0052'),
    (40, 'ABC', 'lambda2'): ('0.5689', '0.0063'),
    (20, 'DE', 'wiener'): ('20.0059', '0.5023'),
    (30, 'DE', 'wiener'): ('37.3375', '1.7241'),
    (40, 'DE', 'wiener'): ('63.9238', '3.2922'),
    (20, 'DE', 'mu'): ('7.1226', '0.4216'),
    (30, 'DE', 'mu'): ('3.7066', '0.6320'),
    (40, 'DE', 'mu'): ('2.9807', '0.6731'),
    (20, 'DE', 'e_p'): ('0.4927', '0.0308'),
    (30, 'DE', 'e_p'): ('0.7244', '0.0227'),
    (40, 'DE', 'e_p'): ('0.7491', '0.0229'),
    (20, 'DE', 't_r'): ('5.1173', '0.6080'),
    (30, 'DE', 't_r'): ('21.6530', '4.1083'),
    (40, 'DE', 't_r'): ('36.1819', '6.3786'),
    (20, 'DE', 'lambda2'): ('0.5865', '0.0051'),
    (30, 'DE', 'lambda2'): ('0.5694', '0.0050'),
    (40, 'DE', 'lambda2'): ('0.5594', '0.0155'),
    (20, 'GSA', 'wiener'): ('25.7549', '0.9448'),
    (30, 'GSA', 'wiener'): ('54.3710', '1.6604'),
    (40, 'GSA', 'wiener'): ('78.9177', '4.4068'),
    (20, 'GSA', 'mu'): ('11.9479', '0.7929'),
    (30, 'GSA', 'mu'): ('9.9510', '0.6087'),
    (40, 'GSA', 'mu'): ('6.0461', '0.9010'),
    (20, 'GSA', 'e_p'): ('0.0498', '0.0328'),
    (30, 'GSA', 'e_p'): ('0.0498', '0.0702'),
    (40, 'GSA', 'e_p'): ('0.6118', '0.0560'),
    (20, 'GSA', 't_r'): ('1.0029', '0.3826'),
    (30, 'GSA', 't_r'): ('3.9853', '0.6537'),
    (40, 'GSA', 't_r'): ('15.7807', '3.3674'),
    (20, 'GSA', 'lambda2'): ('0.5973', '0.0282'),
    (30, 'GSA', 'lambda2'): ('0.5634', '0.0360'),
    (40, 'GSA', 'lambda2'): ('0.5396', '0.0409'),
    (50, 'ABC', 'wiener'): ('93.9531', '2.2281'),
    (60, 'ABC', 'wiener'): ('134.6739', '1.8609'),
    (50, 'ABC', 'mu'): ('2.0932', '0.2900'),
    (60, 'ABC', 'mu'): ('1.9695', '0.1677'),
    (50, 'ABC', 'e_p'): ('0.7755', '0.0075'),
    (60, 'ABC', 'e_p'): ('0.7788', '0.0042'),
    (50, 'ABC', 't_r'): ('58.3868', '5.0666'),
    (60, 'ABC', 't_r'): ('72.8436', '3.6710'),
    (50, 'ABC', 'lambda2'): ('0.5674', '0.0089'),
    (60, 'ABC', 'lambda2'): ('0.5533', '0.0131'),
    (50, 'DE', 'wiener'): ('88.1313', '1.8857'),
    (60, 'DE', 'wiener'): ('124.0911', '4.6739'),
    (50, 'DE', 'mu'): ('1.3353', '0.2455'),
    (60, 'DE', 'mu'): ('1.0160', '0.4211'),
    (50, 'DE', 'e_p'): ('0.7935', '0.0052'),
    (60, 'DE', 'e_p'): ('0.7998', '0.0088'),
    (50, 'DE', 't_r'): ('73.6215', '5.7131'),
    (60, 'DE', 't_r'): ('98.6167', '12.4156'),
    (50, 'DE', 'lambda2'): ('0.5289', '0.0155'),
    (60, 'DE', 'lambda2'): ('0.5304', '0.0220'),
    (50, 'GSA', 'wiener'): ('108.9493', '4.6732'),
    (60, 'GSA', 'wiener'): ('149.6877', '6.7578'),
    (50, 'GSA', 'mu'): ('4.0454', '0.6083'),
    (60, 'GSA', 'mu'): ('3.3221', '0.6089'),
    (50, 'GSA', 'e_p'): ('0.7116', '0.0236'),
    (60, 'GSA', 'e_p'): ('0.7382', '0.0196'),
    (50, 'GSA', 't_r'): ('33.7285', '5.8655'),
    (60, 'GSA', 't_r'): ('49.8861', '9.4138'),
    (50, 'GSA', 'lambda2'): ('0.5418', '0.0252'),
    (60, 'GSA', 'lambda2'): ('0.5545', '0.0361'),
}

# Published means that no rounding of the listed raw values can produce.
# Each looks like a value copied from a neighbouring cell or a transcription
# slip; the STD in the same cell does match the raw values.
KNOWN_INCONSISTENT = frozenset({
    (20, "DE", "e_p"),  # raw mean 0.5453; printed 0.4927 equals the ABC cell above
    (20, "DE", "lambda2"),  # raw mean 0.5861; printed 0.5865
    (20, "GSA", "lambda2"),  # raw mean 0.5733; printed 0.5973
    (30, "GSA", "e_p"),  # raw mean 0.2850; printed 0.0498 equals the N=20 GSA cell
})

# Raw values carry four decimals, so a recomputed mean or STD can differ from
# the printed one by up to one unit in the last place.
DEFAULT_TOLERANCE = 1e-4


def reference_rows() -> list:
    """The per-run values as harness rows (seed = -1, no wall time)."""
    from .harness import ResultRow

    rows = []
    for n in SIZES:
        for k in KINDS:
            for rep in range(8):
                vals = {m: RAW[(n, k, m)][rep] for m in METRICS}
                rows.append(ResultRow(k, n, rep, -1, **vals))
    return rows


def compare_published(tolerance: float = DEFAULT_TOLERANCE) -> list:
    """``(key, computed_mean, computed_std, printed_mean, printed_std, ok)`` per cell."""
    from .harness import summarize

    out = []
    for s in summarize(reference_rows()):
        for m in METRICS:
            key = (s.network_size, s.optimizer, m)
            pm, ps = (float(x) for x in PUBLISHED[key])
            ok = abs(s.mean[m] - pm) <= tolerance + 1e-12 and abs(s.std[m] - ps) <= tolerance + 1e-12
            out.append((key, s.mean[m], s.std[m], pm, ps, ok))
    return out
