# Moebius strip made of two squares. Its single hyperplane is the core
# circle, which is one-sided.
vertex A
vertex B
vertex p
vertex q
cube 2 A p B q
cube 2 p B q A
