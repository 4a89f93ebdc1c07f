"""Engine: feature structures, signs, lexicon, grammar, chart, repair, diagnosis."""
