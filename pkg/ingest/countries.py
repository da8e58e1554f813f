"""
ISO-3166-1 alpha-2 country codes.
"""

from __future__ import annotations

import re
from typing import NewType

from config.errors import DataValidationError

CountryCode = NewType("CountryCode", str)

_CODE_PATTERN = re.compile(r"^[A-Z]{2}$")

ISO_ALPHA2 = frozenset(
    """
    AD AE AF AG AI AL AM AO AQ AR AS AT AU AW AX AZ
    BA BB BD BE BF BG BH BI BJ BL BM BN BO BQ BR BS BT BV BW BY BZ
    CA CC CD CF CG CH CI CK CL CM CN CO CR CU CV CW CX CY CZ
    DE DJ DK DM DO DZ
    EC EE EG EH ER ES ET
    FI FJ FK FM FO FR
    GA GB GD GE GF GG GH GI GL GM GN GP GQ GR GS GT GU GW GY
    HK HM HN HR HT HU
    ID IE IL IM IN IO IQ IR IS IT
    JE JM JO JP
    KE KG KH KI KM KN KP KR KW KY KZ
    LA LB LC LI LK LR LS LT LU LV LY
    MA MC MD ME MF MG MH MK ML MM MN MO MP MQ MR MS MT MU MV MW MX MY MZ
    NA NC NE NF NG NI NL NO NP NR NU NZ
    OM
    PA PE PF PG PH PK PL PM PN PR PS PT PW PY
    QA
    RE RO RS RU RW
    SA SB SC SD SE SG SH SI SJ SK SL SM SN SO SR SS ST SV SX SY SZ
    TC TD TF TG TH TJ TK TL TM TN TO TR TT TV TW TZ
    UA UG UM US UY UZ
    VA VC VE VG VI VN VU
    WF WS
    YE YT
    ZA ZM ZW
    """.split()
)


def is_well_formed(code: str) -> bool:
    return bool(_CODE_PATTERN.match(code))


def validate_country_code(code: str, require_known: bool = False) -> CountryCode:
    """
    Validate a two-letter uppercase country code.

    Args:
        code: Raw code as read from a file.
        require_known: Also require membership in the ISO-3166-1 list.

    Returns:
        The code, typed as CountryCode.
    """
    code = code.strip()
    if not is_well_formed(code):
        raise DataValidationError(f"Invalid country code {code!r}: expected two uppercase letters")
    if require_known and code not in ISO_ALPHA2:
        raise DataValidationError(f"Unknown country code {code!r}")
    return CountryCode(code)
