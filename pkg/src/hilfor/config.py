import os

CAP_ENV = "HILFOR_CAP_OVERRIDE"

DEFAULT_CAPS = {
    "filters": 14,  # algebra size for listing every filter
    "spectrum": 512,  # algebra size for computing irreducible filters
    "homs": 10**7,  # search nodes visited by hom enumeration
    "minimal_set": 16,  # minimal-set size when listing a product base explicitly
    "forests": 7,
    "hbase_forest": 5,
    "bph": 8,
    "hilbert": 6,
    "oracle_elements": 4096,  # size bound for the free-algebra closure
    "coproduct": 2048,  # coproduct size for which a full implication table is built
    "certify_table": 256,  # above this size, certification skips the table and checks lazily
}


def cap(name, explicit=None):
    """Resolve a cap: an explicit value wins, else the default raised by the env override."""
    if explicit is not None:
        return explicit
    value = DEFAULT_CAPS[name]
    raw = os.environ.get(CAP_ENV)
    if raw:
        try:
            value = max(value, int(raw))
        except ValueError:
            pass
    return value
