"""
Dictionary-driven segmentation of unspaced classical Chinese
============================================================

Classical Chinese has no word boundaries, so before any bag-of-words
step we have to decide where the words are.  topicshelf ships a small
dictionary of common classical compounds and a complex maximum
matching segmenter: at each position it enumerates chunks of up to
three dictionary matches and keeps the chunk that wins on, in order,
total length, mean word length, smallest length variance, and the
corpus freedom of its single characters.
"""

from importlib import resources

from topicshelf.segment import Lexicon, load_lexicon, segment

lexicon = load_lexicon(resources.files("topicshelf").joinpath("data/ancient_words.txt"))
print(f"bundled dictionary: {len(lexicon.words)} multi-character words")

# a few famous openings, in simplified script
lines = [
    "学而时习之不亦说乎",   # Analects 1.1
    "道可道非常道名可名非常名",  # Daodejing 1
    "天下皆知美之为美斯恶已",    # Daodejing 2
    "孟子见梁惠王",
]
for line in lines:
    tokens = segment(line, lexicon).tokens
    print(f"{line}  ->  {'/'.join(tokens)}")

# Anything that is not a CJK character is a hard boundary.  Punctuation
# and latin text never become tokens and never let a word span across.
mixed = "子曰(ca. 500 BC)学而时习之"
print(f"\n{mixed}  ->  {'/'.join(segment(mixed, lexicon).tokens)}")

# The dictionary decides everything.  With an empty one, every
# character stands alone; add a single compound and it wins greedily.
plain = Lexicon(frozenset(), {})
print("\nno dictionary: ", "/".join(segment("天下大乱", plain).tokens))
tiny = Lexicon(frozenset({"天下"}), {})
print("with 天下:      ", "/".join(segment("天下大乱", tiny).tokens))

# Character freedom breaks the remaining ties: prefer leaving the
# character that occurs more often on its own.  Here both 天/下大 and
# 天下/大 have the same lengths, so the frequency of the lone char
# decides (a more frequent singleton is less likely to be a word half).
freq_a = {"天": 900, "下": 10, "大": 10}
freq_b = {"天": 10, "下": 10, "大": 900}
two_words = Lexicon(frozenset({"天下", "下大"}), freq_a)
print("\nfreedom toward 天: ", "/".join(segment("天下大", two_words).tokens))
two_words = Lexicon(frozenset({"天下", "下大"}), freq_b)
print("freedom toward 大: ", "/".join(segment("天下大", two_words).tokens))
