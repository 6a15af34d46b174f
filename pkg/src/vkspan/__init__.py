"""Van Kampen cocone checking and span-bicategory bicolimits, at desk scale.

The package decides, by bounded exhaustive search over finite sets and
finite functor categories, whether a colimit cocone is Van Kampen, and
independently whether its image under the graphing embedding is a
bicolimit in the bicategory of spans.  The two verdicts are computed by
unrelated code paths so that they can cross-validate each other.
"""
