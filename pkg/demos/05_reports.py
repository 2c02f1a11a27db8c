"""
Classification reports and confusion matrices
=============================================

"""

import numpy as np

from verdictpipe.evaluation import ConfusionMatrix, classification_report, report_from_confusion
from verdictpipe.labeler import Disposition

A, B, C = Disposition.ALLOW, Disposition.DISMISS, Disposition.DISPOSE

# a network that collapsed onto the majority class
y_true = [A] * 70 + [B] * 21 + [C] * 9
rep = classification_report(y_true, [A] * 100)
print(rep.render())

# accuracy of such a predictor is just the prevalence of that class
print(rep.accuracy, y_true.count(A) / len(y_true))

# a report straight from counts (rows = true class)
cm = ConfusionMatrix(np.array([[70, 6, 9], [12, 39, 0], [9, 8, 27]]))
rep = report_from_confusion(cm)
print(rep.render())
print(cm.to_csv())

# weighted recall always equals accuracy
print(rep.weighted_avg[1], rep.accuracy)
