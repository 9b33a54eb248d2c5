def argc():
    return len(sys.argv)
