"""
Reading the outcome off the operative order
===========================================

"""

from verdictpipe.labeler import LabelerConfig, extract_disposition, strip_disposition_sentences

# the last matching sentence among the trailing twenty decides
judgment = (
    "The High Court held that the appeal is dismissed. "
    "We have heard learned counsel for the parties at length. "
    "For the reasons recorded above, the connected appeal is allowed in part."
)
print(extract_disposition(judgment))

print(extract_disposition("The court reserved judgment."))
print(extract_disposition("Pending applications, if any, stand disposed of."))

# dropping those sentences keeps the answer out of the features
print(strip_disposition_sentences(judgment))

# a narrower window misses an order that sits too far from the end
tail = "The appeal is allowed. " + "Costs shall follow the event. " * 3
print(extract_disposition(tail, LabelerConfig(tail_sentences=3)))
