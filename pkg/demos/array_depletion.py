"""Push a small array harder and watch the reserve drain.

The second bundled case: ten short fractures at 39.62 m spacing. Tripling
and halving the per-fracture rate moves the 50-year outlet across most of
the span between virgin rock and the injection temperature.
"""

import dataclasses

import numpy as np

from egstherm.analytic import onset_of_decline, thermal_power
from egstherm.laplace import multi_fracture_forecast
from egstherm.scenario import bundled_scenario
from egstherm.units import SECONDS_PER_YEAR as YR, convert_value


def main():
    sc = bundled_scenario("zeinali")
    n = sc.fractures.count
    times = np.geomspace(0.1, 50.0, 120) * YR

    print("Ten-fracture array, rate sweep (per-fracture barrels per day):")
    print(" rate [bpd]   rate [m3/s]   T(50 yr) [C]   onset [yr]   P(50 yr) [MW]")
    for rate_bpd in (40.0, 80.0, 160.0):
        total = n * convert_value(rate_bpd, "bpd", "m3_per_s")
        pushed = dataclasses.replace(
            sc, operating=dataclasses.replace(sc.operating, total_rate=total)
        )
        series = multi_fracture_forecast(pushed, times)
        final = float(series.outlet_temperatures[-1])
        onset = onset_of_decline(series, frac=0.01)
        power = thermal_power(pushed, final) / 1e6
        print(
            f"{rate_bpd:10.0f}   {total:11.5f}   {final:12.1f}   "
            f"{onset / YR:10.2f}   {power:13.2f}"
        )

    print()
    print("Higher rates produce more power early but strip the rock sooner;")
    print("the 160 bpd case ends the horizon within ~13 C of the injection")
    print("temperature, i.e. the array is nearly spent.")


if __name__ == "__main__":
    main()
