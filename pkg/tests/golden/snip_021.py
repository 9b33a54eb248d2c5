def join2(a, b):
    return os.path.join(a, b)
