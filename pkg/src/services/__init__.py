"""服务模块"""
from .lattice_service import Bicharacter, Character, GroupData
from .nichols_service import BraidedDiagonalSpace, NicholsData, RootDatum, build_nichols
from .smash_service import SmashAlgebra, smash_product
from .double_service import DoubleAlgebra, braided_double
from .drinfeld_service import GenericDouble, drinfeld_double
from .catalog_service import Preset, get_preset
from .pipeline_service import PipelineService, run_pipeline

__all__ = [
    'Bicharacter',
    'Character',
    'GroupData',
    'BraidedDiagonalSpace',
    'NicholsData',
    'RootDatum',
    'build_nichols',
    'SmashAlgebra',
    'DoubleAlgebra',
    'braided_double',
    'GenericDouble',
    'drinfeld_double',
    'Preset',
    'get_preset',
    'PipelineService',
    'run_pipeline',
]
