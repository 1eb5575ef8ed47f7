# Two annuli sharing their core circle z0 z1 z2; the outer rims are
# exchanged once around. The hyperplane dual to the rungs is embedded and
# two-sided but touches itself at every core vertex.
vertex z0
vertex z1
vertex z2
vertex y1_0
vertex y1_1
vertex y1_2
vertex y2_0
vertex y2_1
vertex y2_2
cube 2 z0 z1 y1_0 y1_1
cube 2 z1 z2 y1_1 y1_2
cube 2 z0 z1 y2_0 y2_1
cube 2 z1 z2 y2_1 y2_2
cube 2 z2 z0 y1_2 y2_0
cube 2 z2 z0 y2_2 y1_0
