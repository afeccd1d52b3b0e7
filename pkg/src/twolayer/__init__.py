"""Generate, count and canonicalize two-layer comparator network prefixes."""

from .errors import InvalidArgument, ParseError, ResourceLimit, TwoLayerError, UnsupportedInput
from .generator import Variant, count_classes, generate_classes, iter_classes, orbit_size, reflect_sentence
from .network import (Network, OutputSet, apply, first_layer_parberry, first_layer_reflective, format_network,
                      is_redundant, is_sorting_network, outputs, parse_network, parse_networks, permute, reflect,
                      two_layer, untangle)
from .saturation import is_saturated_semantic, is_saturated_syntactic, word_saturation_check
from .words import format_sentence, net_of_sentence, net_of_word, parse_sentence, reflect_word, sentence_of

__version__ = "0.1.0"
