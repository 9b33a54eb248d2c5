class Point(object):
    def norm(self):
        return abs(self.x)
