package corpus;

public class ReportTemplate {
    public String renderHeader(String title) {
        return "== " + title + " ==";
    }

    public String renderFooter(int pageNumber) {
        return "-- page " + pageNumber + " --";
    }

    public String renderBody(String content) {
        return content;
    }

    public String renderWatermark(String owner) {
        return "(c) " + owner;
    }
}

class PlainTextReport extends ReportTemplate {
    @Override
    public String renderHeader(String title) {
        return title;
    }

    @Override
    public String renderFooter(int pageNumber) {
        return "page " + pageNumber;
    }
}
