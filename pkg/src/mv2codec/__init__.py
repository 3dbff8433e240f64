"""Multi-radix recoding codec: the MV2 clone transforms, exact analytics,
a bit-exact container format, and a verification harness."""

from ._backend import BACKEND
from .analytics import (
    Clone2FlagLengths,
    FormulaSet,
    clone3_flag_depth,
    delta_length,
    expansion_factor,
    flag_len_clone1,
    flag_len_clone3,
    flag_lens_clone2,
    format_decimal,
    formula_set,
    growth_after_rounds,
    ratio_clone1,
    ratio_clone2,
    ratio_clone3,
)
from .clones import (
    CLONE_IDS,
    CodeBook,
    SecondaryBundle,
    build_codebook,
    decode_clone1,
    decode_clone2,
    decode_clone3,
    encode_clone1,
    encode_clone2,
    encode_clone3,
)
from .container import MAGIC, VERSION, parse_container, serialize_container
from .errors import (
    BadMagicError,
    CapacityError,
    ChecksumError,
    ContainerError,
    ContractError,
    CorruptionError,
    DataError,
    DegenerateRatioError,
    InvalidDigitError,
    LengthMismatchError,
    Mv2Error,
    TruncationError,
    UnknownCodeError,
    UnsupportedVersionError,
)
from .pipeline import (
    Container,
    PipelineParams,
    RoundRecord,
    RoundStreams,
    decode_pipeline,
    emit,
    encode_pipeline,
    ingest,
)
from .pitcore import (
    DEFAULT_ENUMERATION_CAP,
    Pait,
    PaitBlock,
    PitStream,
    bits_per_pit,
    block_into_paits,
    main_file,
    pack_pits,
    pait_of_value,
    significant_length,
    unpack_pits,
    value_of_pait,
)
from .verify import ReportEntry, VerificationReport, run_verification

__version__ = "0.1.0"
